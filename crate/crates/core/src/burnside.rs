//! Burnside groups B(m, n): `m` generators, every element of order dividing `n`.
//!
//! The group is computed by enumerating `<m gens | w^n : w in W_L>` for growing
//! word-length caps `L`, where `W_L` holds one representative of every class of
//! cyclically reduced words of length at most `L`. The enumerated group always
//! surjects onto B(m, n); once its permutation representation has exponent
//! dividing `n` it is itself a quotient of B(m, n), so the two coincide.

use serde::Serialize;

use crate::fpgroup::{
    coset_enumerate, letter_key, perm_group_exponent, regular_representation, CosetTable,
    FpError, Letter, Presentation, Word, DEFAULT_MAX_COSETS,
};

pub const DEFAULT_MAX_WORD_LEN: usize = 6;

/// Parameters of a Burnside computation: `m` generators, exponent `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideSpec {
    pub m: usize,
    pub n: u64,
    pub max_word_len: usize,
    pub max_cosets: usize,
}

impl BurnsideSpec {
    pub fn new(m: usize, n: u64) -> Self {
        BurnsideSpec { m, n, max_word_len: DEFAULT_MAX_WORD_LEN, max_cosets: DEFAULT_MAX_COSETS }
    }

    fn validate(&self) -> Result<(), BurnsideError> {
        if self.m == 0 || self.n < 1 || self.max_word_len == 0 || self.max_cosets == 0 {
            return Err(BurnsideError::InvalidSpec(format!(
                "generators, exponent, max word length and max cosets must be positive: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Outcome of one word-length step of the computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthStep {
    pub max_len: usize,
    pub relators: usize,
    /// Enumerated order, or `None` when the enumeration hit the coset cap.
    pub order: Option<usize>,
    pub exponent: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct BurnsideResult {
    pub order: usize,
    pub relator_len_used: usize,
    pub exponent_certified: bool,
    pub table: CosetTable,
    pub steps: Vec<LengthStep>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum BurnsideError {
    #[error("invalid Burnside parameters: {0}")]
    InvalidSpec(String),
    #[error("undecided: no word length up to {max_word_len} gave a closed enumeration of exponent dividing {n}")]
    Undecided { max_word_len: usize, n: u64, steps: Vec<LengthStep> },
    #[error(transparent)]
    Group(#[from] FpError),
}

fn key(w: &[Letter]) -> Vec<(u32, bool)> {
    w.iter().map(|&x| letter_key(x)).collect()
}

fn is_proper_power(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n).filter(|d| n.is_multiple_of(*d)).any(|d| (d..n).all(|i| w[i] == w[i - d]))
}

/// Least rotation of `w` or its inverse under the order `a < a^-1 < b < b^-1 < ...`.
fn class_minimum(w: &Word) -> Vec<(u32, bool)> {
    let inv = w.inverse();
    (0..w.len())
        .flat_map(|i| [key(w.rotate(i).letters()), key(inv.rotate(i).letters())])
        .min()
        .unwrap_or_default()
}

/// Representatives `w` (as returned, not yet raised to the power `n`) of every class
/// of cyclically reduced, non-power words of length at most `max_len` over `m`
/// generators, up to rotation and inversion. Sorted by length, then lexicographically.
pub fn burnside_words(m: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (1..=m as Letter).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &alphabet {
                if w.last() == Some(&-x) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        for v in &next {
            let w = Word::new(v.iter().copied());
            debug_assert_eq!(w.len(), len);
            if !w.is_cyclically_reduced() || is_proper_power(v) {
                continue;
            }
            if class_minimum(&w) == key(v) {
                out.push(w);
            }
        }
        layer = next;
    }
    out.sort_by_key(|a| (a.len(), key(a.letters())));
    out
}

/// The relators `w^n` for the representatives of [`burnside_words`].
pub fn burnside_relators(m: usize, n: u64, max_len: usize) -> Vec<Word> {
    burnside_words(m, max_len).into_iter().map(|w| w.pow(n as i64)).collect()
}

pub fn burnside_presentation(m: usize, n: u64, max_len: usize) -> Presentation {
    Presentation::new(m, burnside_relators(m, n, max_len)).expect("Burnside relators are valid")
}

/// Computes |B(m, n)| by the enrichment loop described in the module docs.
pub fn compute_burnside(spec: &BurnsideSpec) -> Result<BurnsideResult, BurnsideError> {
    spec.validate()?;
    let mut steps = Vec::new();
    for len in 1..=spec.max_word_len {
        let p = burnside_presentation(spec.m, spec.n, len);
        let relators = p.relators().len();
        let table = match coset_enumerate(&p, &[], spec.max_cosets) {
            Ok(t) => t,
            Err(FpError::Capacity { .. }) => {
                steps.push(LengthStep { max_len: len, relators, order: None, exponent: None });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let order = table.nrows();
        let exponent = perm_group_exponent(&regular_representation(&table)?, order)?;
        steps.push(LengthStep { max_len: len, relators, order: Some(order), exponent: Some(exponent) });
        if spec.n.is_multiple_of(exponent) {
            return Ok(BurnsideResult {
                order,
                relator_len_used: len,
                exponent_certified: true,
                table,
                steps,
            });
        }
    }
    Err(BurnsideError::Undecided { max_word_len: spec.max_word_len, n: spec.n, steps })
}
