use thiserror::Error;

use crate::duopoly::Model;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("strategy `{name}` = {value} must be finite and nonnegative")]
    InvalidStrategy { name: &'static str, value: f64 },

    #[error("operation requires the {expected} model, got {actual}")]
    ModelMismatch { expected: Model, actual: Model },

    #[error("entanglement gamma = {0} outside [0, pi/4] for the two-qubit scheme")]
    GammaOutOfRange(f64),

    #[error("grid must contain at least one point with a positive step")]
    EmptyGrid,

    #[error("truncation dimension {0} too small (need at least 2)")]
    TruncationTooSmall(usize),

    #[error("matrix exponential: {0}")]
    MatrixExp(String),

    #[error("truncated state leaks {leakage:e} probability past the budget {budget:e}")]
    TruncationOverflow { leakage: f64, budget: f64 },

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_strategy(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidStrategy { name, value })
    }
}
