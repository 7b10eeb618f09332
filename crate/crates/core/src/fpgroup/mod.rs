//! Finitely presented groups: words, presentations, coset enumeration and the
//! permutation representation on cosets.

mod coset;
mod perm;
mod presentation;
mod word;

pub use coset::{coset_enumerate, group_order, CosetTable, CosetTableJson, DEFAULT_MAX_COSETS};
pub use perm::{
    gcd, lcm, perm_compose, perm_group_exponent, perm_is_identity, perm_order, regular_representation,
    Perm, PermGroupView,
};
pub use presentation::{parse_presentation, parse_word, ParseError, Presentation};
pub use word::{column_letter, free_reduce, letter_column, letter_key, Letter, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {live} live cosets or elements against a limit of {limit}")]
    Capacity { live: usize, limit: usize },
    #[error("state error: {0}")]
    State(String),
}
