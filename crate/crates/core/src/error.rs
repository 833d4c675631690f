use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distillation::StateKind;

/// Domain errors shared by every module in the crate.
///
/// Errors carry the offending values so that callers (and the CLI) can name
/// the violated precondition instead of printing a bare failure.
#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The physical error rate is outside the domain of the cell-failure
    /// scaling law: the model requires C2 * p < p_th.
    #[error("above threshold: C2*p = {scaled:e} is not below p_th = {p_th:e}")]
    AboveThreshold { scaled: f64, p_th: f64 },

    /// No concatenation level up to the maximum brings the residual error of
    /// the injected state below the target cell failure rate.
    #[error(
        "distillation insufficient: {kind} residual {residual:e} at maximum level {max_level} \
         exceeds target {target:e}"
    )]
    DistillationInsufficient {
        kind: StateKind,
        residual: f64,
        target: f64,
        max_level: u8,
    },

    /// The argument of the logarithm in the distance bound is <= 1, so the
    /// bound degenerates (only possible with toy constants).
    #[error("degenerate distance target: log argument {argument:e} <= 1")]
    DegenerateDistance { argument: f64 },

    /// The smallest problem size already exceeds the requested bound.
    #[error(
        "bound unsatisfiable: {metric} at L = {bits} is {value:e}, above the threshold {threshold:e}"
    )]
    BoundUnsatisfiable {
        metric: String,
        bits: u64,
        value: f64,
        threshold: f64,
    },

    /// The level fixed point moved downward, which the monotone update rules
    /// out; kept as an explicit error rather than a panic.
    #[error("fixed point did not converge: distillation level moved from {from} to {to}")]
    NonConvergence { from: u8, to: u8 },
}

impl Error {
    /// Stable machine-readable tag, used as the status column of grid
    /// outputs.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::AboveThreshold { .. } => "above_threshold",
            Error::DistillationInsufficient { .. } => "distillation_insufficient",
            Error::DegenerateDistance { .. } => "degenerate_distance",
            Error::BoundUnsatisfiable { .. } => "bound_unsatisfiable",
            Error::NonConvergence { .. } => "non_convergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
