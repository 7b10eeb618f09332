use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{AlgebraError, FiniteField, ModRing};

/// Default cap on the number of elements produced by [`group_closure`].
pub const DEFAULT_CLOSURE_MAX: usize = 1_000_000;

/// The coefficient structure of a [`Mat2`]: either Z/nZ or a finite field.
#[derive(Clone, Debug)]
pub enum Carrier {
    Ring(ModRing),
    Field(Arc<FiniteField>),
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Carrier::Ring(a), Carrier::Ring(b)) => a == b,
            (Carrier::Field(a), Carrier::Field(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }
}

impl Eq for Carrier {}

impl Carrier {
    pub fn ring(modulus: u32) -> Result<Self, AlgebraError> {
        Ok(Carrier::Ring(ModRing::new(modulus)?))
    }

    pub fn field(field: FiniteField) -> Self {
        Carrier::Field(Arc::new(field))
    }

    /// Number of elements of the carrier.
    pub fn size(&self) -> u32 {
        match self {
            Carrier::Ring(r) => r.modulus(),
            Carrier::Field(f) => f.size(),
        }
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        match self {
            Carrier::Ring(r) => r.add(x, y),
            Carrier::Field(f) => f.add(x, y),
        }
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        match self {
            Carrier::Ring(r) => r.sub(x, y),
            Carrier::Field(f) => f.sub(x, y),
        }
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        match self {
            Carrier::Ring(r) => r.mul(x, y),
            Carrier::Field(f) => f.mul(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        match self {
            Carrier::Ring(r) => r.neg(x),
            Carrier::Field(f) => f.neg(x),
        }
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        match self {
            Carrier::Ring(r) => r.inv(x),
            Carrier::Field(f) => f.inv(x),
        }
    }

    /// Reduces an integer literal into the carrier. For fields the literal is the
    /// polynomial-basis encoding and must already be in range.
    pub fn element(&self, x: i64) -> Result<u32, AlgebraError> {
        match self {
            Carrier::Ring(r) => Ok(r.reduce(x)),
            Carrier::Field(f) => u32::try_from(x)
                .ok()
                .filter(|&v| v < f.size())
                .ok_or_else(|| {
                    AlgebraError::Domain(format!(
                        "{x} is not an encoded element of a field of size {}",
                        f.size()
                    ))
                }),
        }
    }
}

/// A 2x2 matrix `[[a, b], [c, d]]` over a [`Carrier`], with cached determinant.
#[derive(Clone)]
pub struct Mat2 {
    carrier: Carrier,
    entries: [u32; 4],
    det: u32,
}

impl Mat2 {
    /// Builds a matrix from integer literals, reduced into the carrier.
    pub fn new(carrier: &Carrier, a: i64, b: i64, c: i64, d: i64) -> Result<Self, AlgebraError> {
        let entries = [
            carrier.element(a)?,
            carrier.element(b)?,
            carrier.element(c)?,
            carrier.element(d)?,
        ];
        Ok(Mat2::from_raw(carrier.clone(), entries))
    }

    pub(crate) fn from_raw(carrier: Carrier, entries: [u32; 4]) -> Self {
        let [a, b, c, d] = entries;
        let det = carrier.sub(carrier.mul(a, d), carrier.mul(b, c));
        Mat2 { carrier, entries, det }
    }

    pub fn identity(carrier: &Carrier) -> Self {
        Mat2::from_raw(carrier.clone(), [1, 0, 0, 1])
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// Entries in reading order `(a, b, c, d)`.
    pub fn entries(&self) -> [u32; 4] {
        self.entries
    }

    pub fn det(&self) -> u32 {
        self.det
    }

    pub fn is_identity(&self) -> bool {
        self.entries == [1, 0, 0, 1]
    }

    pub fn is_invertible(&self) -> bool {
        self.carrier.inv(self.det).is_some()
    }

    /// Product `self * other`.
    pub fn mat_mul(&self, other: &Mat2) -> Result<Mat2, AlgebraError> {
        if self.carrier != other.carrier {
            return Err(AlgebraError::Domain(
                "matrix product over different carriers".into(),
            ));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Mat2) -> Mat2 {
        let r = &self.carrier;
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        let entries = [
            r.add(r.mul(a, e), r.mul(b, g)),
            r.add(r.mul(a, f), r.mul(b, h)),
            r.add(r.mul(c, e), r.mul(d, g)),
            r.add(r.mul(c, f), r.mul(d, h)),
        ];
        Mat2 { carrier: self.carrier.clone(), entries, det: r.mul(self.det, other.det) }
    }

    pub fn inverse(&self) -> Result<Mat2, AlgebraError> {
        let r = &self.carrier;
        let di = r.inv(self.det).ok_or_else(|| {
            AlgebraError::Domain(format!("matrix {self} is not invertible"))
        })?;
        let [a, b, c, d] = self.entries;
        Ok(Mat2::from_raw(
            r.clone(),
            [r.mul(di, d), r.mul(di, r.neg(b)), r.mul(di, r.neg(c)), r.mul(di, a)],
        ))
    }

    pub fn pow(&self, mut e: u64) -> Mat2 {
        let mut base = self.clone();
        let mut acc = Mat2::identity(&self.carrier);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Mat2 {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.carrier == other.carrier
    }
}

impl Eq for Mat2 {}

impl Hash for Mat2 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl PartialOrd for Mat2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(a, b, c, d)`; only meaningful within one carrier.
impl Ord for Mat2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Breadth-first closure of `gens` under multiplication by the generators and
/// their inverses. The result is sorted lexicographically by entries.
pub fn group_closure(gens: &[Mat2], max_size: usize) -> Result<Vec<Mat2>, AlgebraError> {
    let first = gens
        .first()
        .ok_or_else(|| AlgebraError::Domain("group_closure needs at least one generator".into()))?;
    let carrier = first.carrier().clone();
    let mut steps = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if *g.carrier() != carrier {
            return Err(AlgebraError::Domain("generators over different carriers".into()));
        }
        steps.push(g.clone());
        steps.push(g.inverse()?);
    }

    let identity = Mat2::identity(&carrier);
    let mut seen: HashSet<[u32; 4]> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.entries);
    queue.push_back(identity);
    let mut found = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = x.mul_unchecked(s);
            if seen.insert(y.entries) {
                if seen.len() > max_size {
                    return Err(AlgebraError::Capacity { found: seen.len() - 1, limit: max_size });
                }
                queue.push_back(y);
            }
        }
        found.push(x);
    }
    found.sort();
    Ok(found)
}

/// Least `k >= 1` with `A^k = I`, searching up to `bound`.
pub fn element_order(m: &Mat2, bound: u64) -> Result<u64, AlgebraError> {
    if !m.is_invertible() {
        return Err(AlgebraError::Domain(format!("matrix {m} is not invertible")));
    }
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul_unchecked(m);
    }
    Err(AlgebraError::OrderNotFound { bound })
}

/// Deduplicated, sorted set of matrices; convenience for tests and reports.
pub fn canonical_set(ms: impl IntoIterator<Item = Mat2>) -> Vec<Mat2> {
    ms.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> Carrier {
        Carrier::ring(8).unwrap()
    }

    fn gf8() -> Carrier {
        Carrier::field(FiniteField::gf8())
    }

    #[test]
    fn identity_is_neutral() {
        let c = z8();
        let a = Mat2::new(&c, 3, 5, 2, 7).unwrap();
        assert_eq!(Mat2::identity(&c).mat_mul(&a).unwrap(), a);
        assert_eq!(a.mat_mul(&Mat2::identity(&c)).unwrap(), a);
    }

    #[test]
    fn unipotent_square_mod_8() {
        let c = z8();
        let u = Mat2::new(&c, 1, 2, 0, 1).unwrap();
        assert_eq!(u.mat_mul(&u).unwrap(), Mat2::new(&c, 1, 4, 0, 1).unwrap());
    }

    #[test]
    fn unipotent_square_char_2() {
        let c = gf8();
        let u = Mat2::new(&c, 1, 1, 0, 1).unwrap();
        assert!(u.mat_mul(&u).unwrap().is_identity());
    }

    #[test]
    fn determinant_is_multiplicative() {
        let c = z8();
        let a = Mat2::new(&c, 3, 5, 2, 7).unwrap();
        let b = Mat2::new(&c, 1, 6, 4, 3).unwrap();
        let ab = a.mat_mul(&b).unwrap();
        assert_eq!(ab.det(), c.mul(a.det(), b.det()));
    }

    #[test]
    fn mismatched_carriers() {
        let a = Mat2::identity(&z8());
        let b = Mat2::identity(&gf8());
        assert!(a.mat_mul(&b).is_err());
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = group_closure(&[Mat2::identity(&z8())], 10).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn closure_of_unipotent_mod_8_is_cyclic_of_order_8() {
        let c = z8();
        let g = group_closure(&[Mat2::new(&c, 1, 1, 0, 1).unwrap()], 100).unwrap();
        assert_eq!(g.len(), 8);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn closure_capacity_error() {
        let c = z8();
        let gens = [Mat2::new(&c, 1, 1, 0, 1).unwrap()];
        match group_closure(&gens, 5) {
            Err(AlgebraError::Capacity { found, limit }) => {
                assert_eq!(limit, 5);
                assert!(found >= 5);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn closure_rejects_singular_generators() {
        let c = z8();
        assert!(group_closure(&[Mat2::new(&c, 2, 0, 0, 1).unwrap()], 100).is_err());
    }

    #[test]
    fn element_orders() {
        let f = FiniteField::gf8();
        let g = f.primitive_element();
        let gi = f.inv(g).unwrap();
        let c = Carrier::field(f);
        assert_eq!(element_order(&Mat2::identity(&c), 10).unwrap(), 1);
        assert_eq!(element_order(&Mat2::new(&c, 1, 1, 0, 1).unwrap(), 10).unwrap(), 2);
        let diag = Mat2::from_raw(c.clone(), [g, 0, 0, gi]);
        assert_eq!(element_order(&diag, 10).unwrap(), 7);
        assert!(matches!(
            element_order(&diag, 3),
            Err(AlgebraError::OrderNotFound { bound: 3 })
        ));
    }
}
