//! Command-line front end. Every subcommand produces a [`RunReport`]; the process
//! exit code is a function of the report's error kind.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | ok |
//! | 2 | parse or validation error |
//! | 3 | capacity, singularity, numeric or pipeline-stage failure |
//! | 4 | I/O error |
//! | 5 | undecided (Burnside enumeration did not certify) |

mod commands;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::AlgebraError;
use crate::burnside::BurnsideError;
use crate::fpgroup::{FpError, DEFAULT_MAX_COSETS};
use crate::psl::PslError;
use crate::render::RenderError;
use crate::schottky::SchottkyError;

pub const MAX_COSETS_ENV: &str = "BURNSIDE_LAB_MAX_COSETS";
pub const RUN_REPORT_SCHEMA: &str = include_str!("../../data/run_report.schema.json");

#[derive(Parser, Debug)]
#[command(name = "burnside-lab", version, about = "Group presentations, Burnside groups, PSL(2,q) and Poincare series")]
pub struct Cli {
    /// Print the run report as JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report elapsed_ms as 0 so output is byte-stable.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order of a finitely presented group by coset enumeration.
    Order {
        file: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Write the standardized coset table as JSON.
        #[arg(long)]
        table_out: Option<PathBuf>,
    },
    /// Order of the Burnside group B(m, n): m generators, exponent n.
    Burnside {
        /// Number of generators m.
        #[arg(long, visible_alias = "generators")]
        gens: usize,
        /// Exponent n.
        #[arg(long, visible_alias = "exponent")]
        exp: u64,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_cosets: Option<usize>,
        #[arg(long)]
        table_out: Option<PathBuf>,
    },
    /// Checks that <a, b | a^7, b^2, (ab)^3, (a^3 b a^5 b a^3 b)^2> is PSL(2, 8).
    #[command(name = "verify-504")]
    Verify504 {
        /// Reduction polynomial of GF(8), constant term first.
        #[arg(long, default_value = "1,1,0,1")]
        poly: String,
        /// Replace the first relator (a^7).
        #[arg(long)]
        override_relator: Option<String>,
    },
    /// Closure of [[1,2],[0,1]] and [[1,0],[2,1]] over Z/8.
    #[command(name = "fricke-mod8")]
    FrickeMod8,
    /// Shell-wise Poincare series and automorphy residuals for a Schottky configuration.
    Poincare {
        config: PathBuf,
        #[arg(long)]
        csv_out: Option<PathBuf>,
        #[arg(long)]
        svg_out: Option<PathBuf>,
    },
    /// Zeros, independent numerators and arbitrary constants for a quotient of series.
    #[command(name = "dimension-count")]
    DimensionCount {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Render a coset table as a Cayley graph (DOT) or the B(2,3) hexagon (SVG).
    Render {
        #[arg(long, value_enum)]
        kind: RenderKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// SVG units per lattice edge.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderKind {
    Cayley,
    Hexagon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Parse,
    Validation,
    Capacity,
    Singularity,
    Numeric,
    Stage,
    Io,
    Undecided,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse | ErrorKind::Validation => 2,
            ErrorKind::Capacity | ErrorKind::Singularity | ErrorKind::Numeric | ErrorKind::Stage => 3,
            ErrorKind::Io => 4,
            ErrorKind::Undecided => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportError {
    pub code: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.code.exit_code())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `key: value` lines for terminal use.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                match v {
                    Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                    other => out.push_str(&format!("{k}: {other}\n")),
                }
            }
        }
        if let Some(e) = &self.error {
            let code = serde_json::to_value(e.code).expect("code serializes");
            let stage = e.stage.as_deref().map(|s| format!(", stage {s}")).unwrap_or_default();
            out.push_str(&format!("error ({}{stage}): {}\n", code.as_str().unwrap_or_default(), e.message));
        }
        out
    }
}

/// Failure of a command, optionally carrying the partial results computed so far.
#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    pub stage: Option<String>,
    pub partial: Option<Value>,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into(), stage: None, partial: None }
    }

    fn at_stage(mut self, stage: &str) -> Self {
        self.stage = Some(stage.to_string());
        self
    }

    fn with_partial(mut self, partial: Value) -> Self {
        self.partial = Some(partial);
        self
    }
}

impl From<FpError> for CliError {
    fn from(e: FpError) -> Self {
        let kind = match e {
            FpError::Parse(_) => ErrorKind::Parse,
            FpError::Domain(_) => ErrorKind::Validation,
            FpError::Capacity { .. } => ErrorKind::Capacity,
            FpError::State(_) => ErrorKind::Stage,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let kind = match e {
            AlgebraError::Domain(_) => ErrorKind::Validation,
            AlgebraError::Capacity { .. } | AlgebraError::OrderNotFound { .. } => ErrorKind::Capacity,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<PslError> for CliError {
    fn from(e: PslError) -> Self {
        match e {
            PslError::Algebra(a) => a.into(),
            PslError::Capacity { .. } => CliError::new(ErrorKind::Capacity, e.to_string()),
            PslError::Domain(_) => CliError::new(ErrorKind::Stage, e.to_string()),
        }
    }
}

impl From<SchottkyError> for CliError {
    fn from(e: SchottkyError) -> Self {
        let kind = match e {
            SchottkyError::Validation(_) | SchottkyError::Domain(_) => ErrorKind::Validation,
            SchottkyError::Singularity(_) => ErrorKind::Singularity,
            SchottkyError::Numeric(_) => ErrorKind::Numeric,
            SchottkyError::Capacity { .. } => ErrorKind::Capacity,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        CliError::new(ErrorKind::Validation, e.to_string())
    }
}

impl From<BurnsideError> for CliError {
    fn from(e: BurnsideError) -> Self {
        match e {
            BurnsideError::InvalidSpec(_) => CliError::new(ErrorKind::Validation, e.to_string()),
            BurnsideError::Undecided { .. } => CliError::new(ErrorKind::Undecided, e.to_string()),
            BurnsideError::Group(g) => g.into(),
        }
    }
}

/// Coset cap: explicit flag, then the environment variable, then the default.
pub fn max_cosets(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(MAX_COSETS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::new(ErrorKind::Validation, format!("{MAX_COSETS_ENV}={v:?} is not a positive integer"))
        }),
        Err(_) => Ok(DEFAULT_MAX_COSETS),
    }
}

pub fn run(cli: &Cli) -> RunReport {
    let start = Instant::now();
    let (name, inputs, outcome) = commands::dispatch(&cli.command);
    let elapsed_ms = if cli.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    match outcome {
        Ok(results) => RunReport {
            command: name.into(),
            inputs,
            results,
            status: Status::Ok,
            error: None,
            elapsed_ms,
        },
        Err(e) => RunReport {
            command: name.into(),
            inputs,
            results: e.partial.unwrap_or(Value::Object(Default::default())),
            status: Status::Error,
            error: Some(ReportError { code: e.kind, message: e.message, stage: e.stage }),
            elapsed_ms,
        },
    }
}
