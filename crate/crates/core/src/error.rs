use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or mismatched input (ragged rows, dimension mismatch, bad indices).
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An identity that must hold by construction failed. Always a bug or a
    /// degenerate instance worth reporting.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
