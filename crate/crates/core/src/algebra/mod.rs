//! Exact arithmetic over Z/nZ and small finite fields, and 2x2 matrices over them.

mod field;
mod mat2;
mod ring;

use serde::{Deserialize, Serialize};

pub use field::{FFElem, FiniteField, MAX_FIELD_SIZE};
pub use mat2::{canonical_set, element_order, group_closure, Carrier, Mat2, DEFAULT_CLOSURE_MAX};
pub use ring::ModRing;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("closure exceeded {limit} elements ({found} found so far)")]
    Capacity { found: usize, limit: usize },
    #[error("element order exceeds bound {bound}")]
    OrderNotFound { bound: u64 },
}

/// Carrier declaration as it appears in JSON files:
/// `{"ring": {"mod": 8}}` or `{"field": {"p": 2, "k": 3, "poly": [1,1,0,1]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CarrierSpec {
    Ring {
        #[serde(rename = "mod")]
        modulus: u32,
    },
    Field { p: u32, k: u32, poly: Vec<u32> },
}

impl CarrierSpec {
    pub fn build(&self) -> Result<Carrier, AlgebraError> {
        match self {
            CarrierSpec::Ring { modulus } => Carrier::ring(*modulus),
            CarrierSpec::Field { p, k, poly } => {
                Ok(Carrier::field(FiniteField::new(*p, *k, poly.clone())?))
            }
        }
    }
}

/// A matrix literal `[[a,b],[c,d]]`. Field entries use the polynomial-basis
/// integer encoding (bit `i` is the coefficient of `x^i` in characteristic 2).
pub type MatrixLiteral = [[i64; 2]; 2];

pub fn mat_from_literal(carrier: &Carrier, lit: &MatrixLiteral) -> Result<Mat2, AlgebraError> {
    Mat2::new(carrier, lit[0][0], lit[0][1], lit[1][0], lit[1][1])
}

pub fn mat_to_literal(m: &Mat2) -> MatrixLiteral {
    let [a, b, c, d] = m.entries().map(i64::from);
    [[a, b], [c, d]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carrier_json_forms() {
        let ring: CarrierSpec = serde_json::from_str(r#"{"ring": {"mod": 8}}"#).unwrap();
        assert_eq!(ring, CarrierSpec::Ring { modulus: 8 });
        let field: CarrierSpec =
            serde_json::from_str(r#"{"field": {"p": 2, "k": 3, "poly": [1,1,0,1]}}"#).unwrap();
        let carrier = field.build().unwrap();
        assert_eq!(carrier.size(), 8);
        let lit: MatrixLiteral = serde_json::from_str("[[1,2],[0,1]]").unwrap();
        let m = mat_from_literal(&ring.build().unwrap(), &lit).unwrap();
        assert_eq!(mat_to_literal(&m), lit);
        assert!(mat_from_literal(&carrier, &[[9, 0], [0, 1]]).is_err());
    }
}
