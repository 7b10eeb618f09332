use super::AlgebraError;

/// The ring of integers modulo `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModRing {
    modulus: u32,
}

impl ModRing {
    pub fn new(modulus: u32) -> Result<Self, AlgebraError> {
        if modulus < 2 {
            return Err(AlgebraError::Domain(format!(
                "modulus must be at least 2, got {modulus}"
            )));
        }
        Ok(ModRing { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.modulus as i64) as u32
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.modulus as u64) as u32
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.modulus - x
        }
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.modulus as u64) as u32
    }

    /// Multiplicative inverse via the extended Euclidean algorithm, if `x` is a unit.
    pub fn inv(&self, x: u32) -> Option<u32> {
        let (mut r0, mut r1) = (self.modulus as i64, x as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| self.reduce(t0))
    }
}
