use std::fmt;

use num_complex::Complex64;

use super::SchottkyError;

/// Distance to a pole below which evaluation is refused.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// `z -> (az + b) / (cz + d)` with `ad - bc = 1`.
#[derive(Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    /// Normalizes the coefficients by a square root of the determinant.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, SchottkyError> {
        let det = a * d - b * c;
        if !(det.norm() > 0.0) || !det.is_finite() {
            return Err(SchottkyError::Domain("Mobius map has zero or non-finite determinant".into()));
        }
        let s = det.sqrt();
        Ok(MobiusMap { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MobiusMap { a: one, b: zero, c: zero, d: one }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product: `self.compose(g)` is the map `z -> self(g(z))`.
    pub fn compose(&self, g: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * g.a + self.b * g.c,
            b: self.a * g.b + self.b * g.d,
            c: self.c * g.a + self.d * g.c,
            d: self.c * g.b + self.d * g.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// The automorphy factor `cz + d`.
    pub fn denominator(&self, z: Complex64) -> Complex64 {
        self.c * z + self.d
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64, SchottkyError> {
        if self.c != Complex64::new(0.0, 0.0) {
            let pole = -self.d / self.c;
            if (z - pole).norm() <= POLE_TOLERANCE {
                return Err(SchottkyError::Singularity(format!("point {z} is the pole of the map")));
            }
        }
        Ok((self.a * z + self.b) / (self.c * z + self.d))
    }

    /// Largest entrywise distance after fixing the projective sign.
    pub fn distance(&self, other: &MobiusMap) -> f64 {
        let plus = [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d];
        let minus = [self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d];
        let max = |v: [Complex64; 4]| v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        max(plus).min(max(minus))
    }
}

impl fmt::Debug for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
