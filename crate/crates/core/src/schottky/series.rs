use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::{extend_shell, shell_size, SchottkyConfig, ShellElement, DEFAULT_SHELL_CAP};
use super::mobius::MobiusMap;
use super::SchottkyError;

/// Minimum distance from an evaluation point to a pole of `H`.
pub const H_POLE_TOLERANCE: f64 = 1e-9;

/// Rational function `H` built from constants, poles `1/(z - z0)^j` and
/// polynomials of degree at most 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HExpr {
    Const([f64; 2]),
    Pole { at: [f64; 2], order: u32 },
    /// Coefficients, constant term first.
    Poly(Vec<[f64; 2]>),
    Sum(Vec<HExpr>),
    Product(Vec<HExpr>),
}

fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl HExpr {
    pub fn one() -> Self {
        HExpr::Const([1.0, 0.0])
    }

    pub fn simple_pole(z0: Complex64) -> Self {
        HExpr::Pole { at: [z0.re, z0.im], order: 1 }
    }

    pub fn validate(&self) -> Result<(), SchottkyError> {
        match self {
            HExpr::Const(_) => Ok(()),
            HExpr::Pole { order, .. } if *order == 0 => {
                Err(SchottkyError::Validation("pole order must be at least 1".into()))
            }
            HExpr::Pole { .. } => Ok(()),
            HExpr::Poly(c) if c.is_empty() || c.len() > 3 => {
                Err(SchottkyError::Validation("polynomial needs 1 to 3 coefficients".into()))
            }
            HExpr::Poly(_) => Ok(()),
            HExpr::Sum(v) | HExpr::Product(v) => v.iter().try_for_each(HExpr::validate),
        }
    }

    /// Value at `z`; `None` within [`H_POLE_TOLERANCE`] of a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        match self {
            HExpr::Const(c) => Some(cx(*c)),
            HExpr::Pole { at, order } => {
                let dz = z - cx(*at);
                (dz.norm() > H_POLE_TOLERANCE).then(|| dz.powi(-(*order as i32)))
            }
            HExpr::Poly(c) => Some(c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + cx(a))),
            HExpr::Sum(v) => v.iter().try_fold(Complex64::new(0.0, 0.0), |acc, h| Some(acc + h.eval(z)?)),
            HExpr::Product(v) => v.iter().try_fold(Complex64::new(1.0, 0.0), |acc, h| Some(acc * h.eval(z)?)),
        }
    }
}

/// Neumaier compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Per-shell data of a truncated Poincare series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Shell {
    pub k: usize,
    pub count: usize,
    /// Sum of absolute values of the terms.
    pub magnitude: f64,
    pub sum: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesReport {
    pub d: i32,
    pub z: [f64; 2],
    pub shells: Vec<Shell>,
    /// Running totals after shells `0..=k`.
    pub partial_sums: Vec<[f64; 2]>,
    /// `magnitude[k+1] / magnitude[k]`.
    pub decay_ratios: Vec<f64>,
    /// Truncated series value, accumulated from the outermost shell inwards.
    pub total: [f64; 2],
}

impl SeriesReport {
    pub fn total(&self) -> Complex64 {
        cx(self.total)
    }
}

fn word_name(word: &[i32]) -> String {
    if word.is_empty() {
        return "identity".into();
    }
    word.iter()
        .map(|&x| if x > 0 { format!("g{x}") } else { format!("g{}^-1", -x) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn term(e: &ShellElement, h: &HExpr, d: i32, z: Complex64) -> Result<Complex64, SchottkyError> {
    let w = e
        .map
        .apply(z)
        .map_err(|_| SchottkyError::Singularity(format!("word {} has its pole at z", word_name(&e.word))))?;
    let hv = h.eval(w).ok_or_else(|| {
        SchottkyError::Singularity(format!("H has a pole at the image of z under {}", word_name(&e.word)))
    })?;
    let t = hv * e.map.denominator(z).powi(d);
    if !t.is_finite() {
        return Err(SchottkyError::Numeric(format!("non-finite term for word {}", word_name(&e.word))));
    }
    Ok(t)
}

fn check_point(cfg: &SchottkyConfig, z: Complex64) -> Result<(), SchottkyError> {
    if !z.is_finite() {
        return Err(SchottkyError::Domain("evaluation point is not finite".into()));
    }
    if cfg.circles().any(|c| c.contains_closed(z)) {
        return Err(SchottkyError::Domain(format!("point {z} lies inside a configuration circle")));
    }
    Ok(())
}

/// Shell-by-shell partial sums of `sum_g H(g z) (g_c z + g_d)^d` over reduced words
/// of length `0..=max_shell`.
pub fn poincare_partial_sum(
    cfg: &SchottkyConfig,
    h: &HExpr,
    d: i32,
    z: Complex64,
    max_shell: usize,
) -> Result<SeriesReport, SchottkyError> {
    check_point(cfg, z)?;
    partial_sum_unchecked(cfg, h, d, z, max_shell)
}

// Same as `poincare_partial_sum` but accepts points inside the circles (orbit
// points such as `g z`); pole and overflow checks still apply.
fn partial_sum_unchecked(
    cfg: &SchottkyConfig,
    h: &HExpr,
    d: i32,
    z: Complex64,
    max_shell: usize,
) -> Result<SeriesReport, SchottkyError> {
    if d > -1 {
        return Err(SchottkyError::Domain(format!("dimension must be at most -1, got {d}")));
    }
    h.validate()?;
    if !z.is_finite() {
        return Err(SchottkyError::Domain("evaluation point is not finite".into()));
    }
    if shell_size(cfg.n(), max_shell).is_none_or(|s| s > DEFAULT_SHELL_CAP) {
        return Err(SchottkyError::Capacity { k: max_shell, cap: DEFAULT_SHELL_CAP });
    }

    let alphabet = cfg.alphabet();
    let mut shell = vec![ShellElement { word: Vec::new(), map: MobiusMap::identity() }];
    let mut shells = Vec::with_capacity(max_shell + 1);
    let mut shell_sums = Vec::with_capacity(max_shell + 1);
    for k in 0..=max_shell {
        if k > 0 {
            shell = extend_shell(cfg, &shell, &alphabet);
        }
        let mut magnitude = CompensatedSum::default();
        let mut sum = ComplexSum::default();
        for e in &shell {
            let t = term(e, h, d, z)?;
            magnitude.add(t.norm());
            sum.add(t);
        }
        let s = sum.value();
        let m = magnitude.value();
        if !m.is_finite() || !s.is_finite() {
            return Err(SchottkyError::Numeric(format!("shell {k} sum overflowed")));
        }
        shells.push(Shell { k, count: shell.len(), magnitude: m, sum: [s.re, s.im] });
        shell_sums.push(s);
    }

    let mut running = ComplexSum::default();
    let partial_sums = shell_sums
        .iter()
        .map(|&s| {
            running.add(s);
            let v = running.value();
            [v.re, v.im]
        })
        .collect();
    let mut total = ComplexSum::default();
    for &s in shell_sums.iter().rev() {
        total.add(s);
    }
    let total = total.value();
    let decay_ratios = shells.windows(2).map(|w| w[1].magnitude / w[0].magnitude).collect();
    Ok(SeriesReport { d, z: [z.re, z.im], shells, partial_sums, decay_ratios, total: [total.re, total.im] })
}

/// `|theta_K(g z) - (g_c z + g_d)^(-d) theta_K(z)|` for the truncated series `theta_K`.
///
/// The sum over the group with factor `(cz + d)^d` transforms with the reciprocal
/// factor: `theta(g z) = (g_c z + g_d)^(-d) theta(z)`.
pub fn automorphy_residual(
    cfg: &SchottkyConfig,
    h: &HExpr,
    d: i32,
    z: Complex64,
    gamma: &MobiusMap,
    max_shell: usize,
) -> Result<f64, SchottkyError> {
    let gz = gamma.apply(z)?;
    let at_z = poincare_partial_sum(cfg, h, d, z, max_shell)?.total();
    let at_gz = partial_sum_unchecked(cfg, h, d, gz, max_shell)?.total();
    let factor = gamma.denominator(z).powi(-d);
    Ok((at_gz - factor * at_z).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z0() -> Complex64 {
        Complex64::new(0.3, 0.7)
    }

    #[test]
    fn identity_shell_only() {
        let cfg = SchottkyConfig::reference();
        let r = poincare_partial_sum(&cfg, &HExpr::one(), -4, z0(), 0).unwrap();
        assert_eq!(r.total(), Complex64::new(1.0, 0.0));
        assert_eq!(r.shells[0].count, 1);
        assert!(r.decay_ratios.is_empty());
    }

    #[test]
    fn shell_counts_follow_free_growth() {
        let cfg = SchottkyConfig::reference();
        let r = poincare_partial_sum(&cfg, &HExpr::one(), -4, z0(), 6).unwrap();
        for s in &r.shells {
            assert_eq!(Some(s.count), shell_size(2, s.k));
        }
        assert_eq!(r.partial_sums.len(), 7);
    }

    #[test]
    fn reference_decays_at_dimension_minus_four() {
        let cfg = SchottkyConfig::reference();
        let r = poincare_partial_sum(&cfg, &HExpr::one(), -4, z0(), 8).unwrap();
        assert!(r.decay_ratios[2..].iter().all(|&q| q < 1.0), "{:?}", r.decay_ratios);
    }

    #[test]
    fn residual_identity_is_zero() {
        let cfg = SchottkyConfig::reference();
        for d in [-1, -2, -4] {
            let res = automorphy_residual(&cfg, &HExpr::one(), d, z0(), &MobiusMap::identity(), 3).unwrap();
            assert_eq!(res, 0.0);
        }
    }

    #[test]
    fn residual_at_truncation_zero() {
        let cfg = SchottkyConfig::reference();
        let g = cfg.pairs()[0].map;
        let res = automorphy_residual(&cfg, &HExpr::one(), -4, z0(), &g, 0).unwrap();
        let expected = (Complex64::new(1.0, 0.0) - g.denominator(z0()).powi(4)).norm();
        assert!((res - expected).abs() <= 1e-12 * expected.max(1.0));
    }

    #[test]
    fn residual_shrinks_with_truncation() {
        let cfg = SchottkyConfig::reference();
        let g = cfg.pairs()[1].map;
        let r2 = automorphy_residual(&cfg, &HExpr::one(), -4, z0(), &g, 2).unwrap();
        let r8 = automorphy_residual(&cfg, &HExpr::one(), -4, z0(), &g, 8).unwrap();
        assert!(r8 < r2);
    }

    #[test]
    fn invalid_inputs() {
        let cfg = SchottkyConfig::reference();
        assert!(matches!(
            poincare_partial_sum(&cfg, &HExpr::one(), 0, z0(), 2),
            Err(SchottkyError::Domain(_))
        ));
        assert!(poincare_partial_sum(&cfg, &HExpr::one(), -4, Complex64::new(3.1, 0.0), 2).is_err());
        assert!(poincare_partial_sum(&cfg, &HExpr::Poly(vec![]), -4, z0(), 2).is_err());
    }

    #[test]
    fn pole_of_h_on_the_orbit() {
        let cfg = SchottkyConfig::reference();
        let g = cfg.pairs()[0].map;
        let target = g.apply(z0()).unwrap();
        let h = HExpr::simple_pole(target);
        match poincare_partial_sum(&cfg, &h, -2, z0(), 2) {
            Err(SchottkyError::Singularity(msg)) => assert!(msg.contains("g1"), "{msg}"),
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn expression_evaluation() {
        let z = Complex64::new(2.0, 1.0);
        let poly = HExpr::Poly(vec![[1.0, 0.0], [0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(poly.eval(z), Some(z * z + 1.0));
        let prod = HExpr::Product(vec![HExpr::simple_pole(Complex64::new(0.0, 0.0)), poly.clone()]);
        assert!((prod.eval(z).unwrap() - (z * z + 1.0) / z).norm() < 1e-15);
        let sum = HExpr::Sum(vec![HExpr::one(), HExpr::Pole { at: [1.0, 1.0], order: 2 }]);
        assert!((sum.eval(z).unwrap() - (1.0 + 1.0 / ((z - Complex64::new(1.0, 1.0)).powi(2)))).norm() < 1e-15);
        let json = r#"{"sum": [{"const": [1, 0]}, {"pole": {"at": [0.0, 0.0], "order": 1}}]}"#;
        let parsed: HExpr = serde_json::from_str(json).unwrap();
        assert!(parsed.validate().is_ok());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }
}
