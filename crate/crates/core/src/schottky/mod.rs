//! Poincare series over Schottky groups: shell-wise summation over reduced words in
//! the circle-pairing maps, decay diagnostics, automorphy residuals, and the
//! constant count for quotients of series.
//!
//! Schottky groups with disjoint circles are free, so group elements are enumerated
//! as reduced words without deduplication.

mod config;
mod dimension;
mod mobius;
mod report;
mod series;

pub use config::{
    enumerate_shell, shell_size, Circle, CirclePair, PairSpec, SchottkyConfig, SeriesConfigJson,
    ShellElement, BOUNDARY_TOLERANCE, DEFAULT_SHELL_CAP, DISJOINT_TOLERANCE, REFERENCE_CONFIG,
};
pub use dimension::{dimension_count, DimensionCount};
pub use mobius::{MobiusMap, POLE_TOLERANCE};
pub use report::{series_csv, series_svg};
pub use series::{
    automorphy_residual, poincare_partial_sum, CompensatedSum, HExpr, SeriesReport, Shell,
    H_POLE_TOLERANCE,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum SchottkyError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("numeric error: {0}")]
    Numeric(String),
    #[error("shell {k} exceeds the cap of {cap} elements")]
    Capacity { k: usize, cap: usize },
}
