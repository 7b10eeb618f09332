use serde::Serialize;

use super::SchottkyError;

/// Constant counting for a quotient of Poincare series of dimensions `-2m-2`
/// (numerator) and `-2m` (denominator) over a group bounded by `n` circle pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCount {
    pub m: u64,
    pub n: u64,
    /// Zeros of the pole-free denominator: `2m(n-1)`.
    pub zeros: u64,
    /// Independent pole-free numerators: `(2m+1)(n-1)`.
    pub independents: u64,
    /// Constants left once every denominator zero is a numerator zero.
    pub arbitraries_left: u64,
    /// Constants the flow requires: one circulation constant per circle pair.
    pub arbitraries_required: u64,
    pub deficiency: u64,
}

pub fn dimension_count(m: u64, n: u64) -> Result<DimensionCount, SchottkyError> {
    if m < 1 {
        return Err(SchottkyError::Validation(format!("m must be at least 1, got {m}")));
    }
    if n < 2 {
        return Err(SchottkyError::Validation(format!("n must be at least 2 circle pairs, got {n}")));
    }
    let zeros = 2 * m * (n - 1);
    let independents = (2 * m + 1) * (n - 1);
    let arbitraries_left = independents - zeros;
    let arbitraries_required = n;
    Ok(DimensionCount {
        m,
        n,
        zeros,
        independents,
        arbitraries_left,
        arbitraries_required,
        deficiency: arbitraries_required - arbitraries_left,
    })
}
