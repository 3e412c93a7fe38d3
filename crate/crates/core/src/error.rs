use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("cell resolution too coarse: {0}")]
    CellResolution(String),

    #[error("enumeration cost {cells} exceeds guard {guard}")]
    CostGuard { cells: u128, guard: u128 },

    #[error("indeterminate normalization: {0}")]
    IndeterminateNormalization(String),

    #[error("pole encountered: {0}")]
    Pole(String),

    #[error("missing datum: {0}")]
    MissingDatum(String),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("exact division failed: {0}")]
    ExactDivision(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
