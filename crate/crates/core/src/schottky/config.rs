use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mobius::MobiusMap;
use super::SchottkyError;
use crate::fpgroup::{letter_key, Letter};

pub const DISJOINT_TOLERANCE: f64 = 1e-9;
pub const BOUNDARY_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_SHELL_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(x: f64, y: f64, r: f64) -> Result<Self, SchottkyError> {
        if !(r > 0.0) || !x.is_finite() || !y.is_finite() || !r.is_finite() {
            return Err(SchottkyError::Validation(format!("invalid circle ({x}, {y}, {r})")));
        }
        Ok(Circle { center: Complex64::new(x, y), radius: r })
    }

    pub fn contains_closed(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    fn boundary_point(&self, i: usize, n: usize) -> Complex64 {
        let t = std::f64::consts::TAU * i as f64 / n as f64;
        self.center + Complex64::from_polar(self.radius, t)
    }
}

/// A pair of circles with the map carrying the exterior of `c` onto the interior of `cprime`.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePair {
    pub c: Circle,
    pub cprime: Circle,
    pub map: MobiusMap,
}

impl CirclePair {
    /// Pairing map `z -> c' + r r' / (z - c)`.
    pub fn new(c: Circle, cprime: Circle) -> Result<Self, SchottkyError> {
        let rr = Complex64::new(c.radius * cprime.radius, 0.0);
        let map = MobiusMap::new(
            cprime.center,
            rr - cprime.center * c.center,
            Complex64::new(1.0, 0.0),
            -c.center,
        )?;
        Ok(CirclePair { c, cprime, map })
    }
}

/// `n` disjoint circle pairs and their pairing maps, freely generating a Schottky group.
#[derive(Clone, Debug, PartialEq)]
pub struct SchottkyConfig {
    pairs: Vec<CirclePair>,
}

impl SchottkyConfig {
    pub fn new(pairs: Vec<CirclePair>) -> Result<Self, SchottkyError> {
        if pairs.is_empty() {
            return Err(SchottkyError::Validation("at least one circle pair is required".into()));
        }
        let circles: Vec<Circle> = pairs.iter().flat_map(|p| [p.c, p.cprime]).collect();
        for i in 0..circles.len() {
            for j in i + 1..circles.len() {
                let gap = (circles[i].center - circles[j].center).norm()
                    - (circles[i].radius + circles[j].radius);
                if gap <= DISJOINT_TOLERANCE {
                    return Err(SchottkyError::Validation(format!(
                        "circles {i} and {j} are not disjoint (gap {gap:e})"
                    )));
                }
            }
        }
        for (k, p) in pairs.iter().enumerate() {
            for i in 0..16 {
                let w = p.map.apply(p.c.boundary_point(i, 16))?;
                let residual = ((w - p.cprime.center).norm() - p.cprime.radius).abs();
                if residual > BOUNDARY_TOLERANCE {
                    return Err(SchottkyError::Validation(format!(
                        "pairing map {k} misses the target circle by {residual:e}"
                    )));
                }
            }
        }
        Ok(SchottkyConfig { pairs })
    }

    pub fn from_circles(spec: &[PairSpec]) -> Result<Self, SchottkyError> {
        let pairs = spec
            .iter()
            .map(|p| {
                CirclePair::new(
                    Circle::new(p.c[0], p.c[1], p.c[2])?,
                    Circle::new(p.cprime[0], p.cprime[1], p.cprime[2])?,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        SchottkyConfig::new(pairs)
    }

    /// Two pairs on the real axis: radii 0.5, centers -3/3 and -6/6.
    pub fn reference() -> Self {
        let spec: SeriesConfigJson = serde_json::from_str(REFERENCE_CONFIG).expect("bundled config parses");
        SchottkyConfig::from_circles(&spec.pairs).expect("bundled config is valid")
    }

    pub fn pairs(&self) -> &[CirclePair] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn circles(&self) -> impl Iterator<Item = &Circle> {
        self.pairs.iter().flat_map(|p| [&p.c, &p.cprime])
    }

    /// Map of a single letter: `+i` is pairing map `i`, `-i` its inverse.
    pub fn letter_map(&self, x: Letter) -> MobiusMap {
        let m = self.pairs[(x.unsigned_abs() - 1) as usize].map;
        if x > 0 {
            m
        } else {
            m.inverse()
        }
    }

    /// Generators and inverses in lexicographic letter order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = (1..=self.n() as Letter).flat_map(|g| [g, -g]).collect();
        v.sort_by_key(|&x| letter_key(x));
        v
    }
}

/// Group element of a shell: reduced word and composed map.
#[derive(Clone, Debug)]
pub struct ShellElement {
    pub word: Vec<Letter>,
    pub map: MobiusMap,
}

pub fn shell_size(n: usize, k: usize) -> Option<usize> {
    if k == 0 {
        return Some(1);
    }
    let base = 2 * n - 1;
    (0..k - 1).try_fold(2 * n, |acc: usize, _| acc.checked_mul(base))
}

/// All reduced words of length exactly `k` in lexicographic order, with their maps.
pub fn enumerate_shell(cfg: &SchottkyConfig, k: usize, cap: usize) -> Result<Vec<ShellElement>, SchottkyError> {
    match shell_size(cfg.n(), k) {
        Some(s) if s <= cap => {}
        _ => return Err(SchottkyError::Capacity { k, cap }),
    }
    let mut shell = vec![ShellElement { word: Vec::new(), map: MobiusMap::identity() }];
    let alphabet = cfg.alphabet();
    for _ in 0..k {
        shell = extend_shell(cfg, &shell, &alphabet);
    }
    Ok(shell)
}

pub(crate) fn extend_shell(cfg: &SchottkyConfig, shell: &[ShellElement], alphabet: &[Letter]) -> Vec<ShellElement> {
    let mut next = Vec::with_capacity(shell.len() * alphabet.len());
    for e in shell {
        for &x in alphabet {
            if e.word.last() == Some(&-x) {
                continue;
            }
            let mut word = e.word.clone();
            word.push(x);
            next.push(ShellElement { word, map: e.map.compose(&cfg.letter_map(x)) });
        }
    }
    next
}

/// `[x, y, r]` circle pair as stored in configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub c: [f64; 3],
    pub cprime: [f64; 3],
}

/// Poincare series configuration file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfigJson {
    pub pairs: Vec<PairSpec>,
    #[serde(rename = "H", default = "super::series::HExpr::one")]
    pub h: super::series::HExpr,
    pub d: i32,
    pub z: [f64; 2],
    #[serde(rename = "K")]
    pub k: usize,
}

pub const REFERENCE_CONFIG: &str = include_str!("../../data/reference_config.json");
