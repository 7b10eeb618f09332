use std::fmt;
use std::sync::Arc;

use super::AlgebraError;

/// Largest field size accepted by [`FiniteField::new`].
pub const MAX_FIELD_SIZE: u32 = 64;

/// A finite field GF(p^k) in the polynomial basis, with full operation tables.
///
/// Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`, where
/// `c_i` is the coefficient of `x^i`.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    poly: Vec<u32>,
    size: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.poly == other.poly
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("poly", &self.poly)
            .finish()
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FiniteField {
    /// Builds GF(p^k) from a reduction polynomial given as `k + 1` coefficients,
    /// constant term first. The polynomial must be monic and irreducible.
    pub fn new(p: u32, k: u32, poly: Vec<u32>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::Domain(format!("characteristic {p} is not prime")));
        }
        if k == 0 {
            return Err(AlgebraError::Domain("field degree must be positive".into()));
        }
        let size = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or_else(|| {
                AlgebraError::Domain(format!(
                    "field size {p}^{k} exceeds the supported maximum {MAX_FIELD_SIZE}"
                ))
            })?;
        if poly.len() != k as usize + 1 {
            return Err(AlgebraError::Domain(format!(
                "reduction polynomial needs {} coefficients, got {}",
                k + 1,
                poly.len()
            )));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(AlgebraError::Domain(format!(
                "reduction polynomial coefficients must lie in [0, {}]",
                p - 1
            )));
        }
        if poly[k as usize] != 1 {
            return Err(AlgebraError::Domain("reduction polynomial must be monic".into()));
        }

        let q = size as usize;
        let mut field = FiniteField {
            p,
            k,
            poly,
            size,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
        };
        for x in 0..size {
            for y in 0..size {
                let idx = (x * size + y) as usize;
                field.add[idx] = field.slow_add(x, y) as u8;
                field.mul[idx] = field.slow_mul(x, y) as u8;
            }
            field.neg[x as usize] = field.slow_neg(x) as u8;
        }
        // GF(p)[x]/(f) is a field iff it has no zero divisors iff f is irreducible.
        for x in 1..size {
            let mut found = None;
            for y in 1..size {
                let prod = field.mul(x, y);
                if prod == 0 {
                    return Err(AlgebraError::Domain(format!(
                        "reduction polynomial {:?} is reducible over GF({p})",
                        field.poly
                    )));
                }
                if prod == 1 {
                    found = Some(y);
                }
            }
            field.inv[x as usize] = found.expect("no zero divisors implies invertible") as u8;
        }
        Ok(field)
    }

    /// GF(8) with reduction polynomial x^3 + x + 1.
    pub fn gf8() -> Self {
        FiniteField::new(2, 3, vec![1, 1, 0, 1]).expect("x^3+x+1 is irreducible over GF(2)")
    }

    /// The prime field GF(p), with reduction polynomial x.
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        FiniteField::new(p, 1, vec![0, 1])
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    fn to_coeffs(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut v = x;
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn from_coeffs(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_add(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.to_coeffs(x), self.to_coeffs(y));
        let sum: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.from_coeffs(&sum)
    }

    fn slow_neg(&self, x: u32) -> u32 {
        let a: Vec<u32> = self
            .to_coeffs(x)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.from_coeffs(&a)
    }

    // Schoolbook product followed by long division by the reduction polynomial.
    fn slow_mul(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.to_coeffs(x), self.to_coeffs(y));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            for (i, &c) in self.poly.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + self.p * self.p - lead * c % self.p) % self.p;
            }
        }
        self.from_coeffs(&prod[..k])
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.size + y) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.size + y) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize] as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.inv[x as usize] as u32)
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (x, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let mut acc = x;
        let mut n = 1;
        while acc != 1 {
            acc = self.mul(acc, x);
            n += 1;
        }
        Some(n)
    }

    /// Smallest encoded element generating the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.size)
            .find(|&x| self.mul_order(x) == Some(self.size - 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Wraps an encoded value as an element, checking range.
    pub fn elem(self: &Arc<Self>, value: u32) -> Result<FFElem, AlgebraError> {
        if value >= self.size {
            return Err(AlgebraError::Domain(format!(
                "value {value} is not an element of a field of size {}",
                self.size
            )));
        }
        Ok(FFElem { field: Arc::clone(self), value })
    }

    /// Element with the given polynomial-basis coefficients (constant term first).
    pub fn from_coefficients(self: &Arc<Self>, coeffs: &[u32]) -> Result<FFElem, AlgebraError> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(AlgebraError::Domain(format!(
                "expected {} coefficients in [0, {}]",
                self.k,
                self.p - 1
            )));
        }
        Ok(FFElem { field: Arc::clone(self), value: self.from_coeffs(coeffs) })
    }
}

/// An element of a [`FiniteField`].
#[derive(Clone, Debug)]
pub struct FFElem {
    field: Arc<FiniteField>,
    value: u32,
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FFElem {}

impl FFElem {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.to_coeffs(self.value)
    }

    fn check_same(&self, other: &FFElem) -> Result<(), AlgebraError> {
        if *self.field != *other.field {
            return Err(AlgebraError::Domain("operands belong to different fields".into()));
        }
        Ok(())
    }

    pub fn ff_add(&self, other: &FFElem) -> Result<FFElem, AlgebraError> {
        self.check_same(other)?;
        Ok(FFElem { field: Arc::clone(&self.field), value: self.field.add(self.value, other.value) })
    }

    pub fn ff_mul(&self, other: &FFElem) -> Result<FFElem, AlgebraError> {
        self.check_same(other)?;
        Ok(FFElem { field: Arc::clone(&self.field), value: self.field.mul(self.value, other.value) })
    }

    pub fn pow(&self, e: u64) -> FFElem {
        FFElem { field: Arc::clone(&self.field), value: self.field.pow(self.value, e) }
    }
}
