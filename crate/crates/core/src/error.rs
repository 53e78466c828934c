use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),

    #[error("{what} index {index} out of range {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("expected {expected} samples, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("expansion order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("plane wave is off the mass shell (E² − m² − |k|² = {defect:e})")]
    OffShell { defect: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("reference field has zero norm")]
    ZeroNorm,
}

pub(crate) fn check_mass(mass: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidMass(mass))
    }
}
