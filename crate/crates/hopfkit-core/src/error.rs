use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Engine errors. Mathematical verdicts ("the theorem check failed on this
/// input") are returned as reports, not errors; `Error` is reserved for
/// malformed input, violated preconditions and corrupted internal state.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parent mismatch: {0}")]
    ParentMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("theorem violation, input data is inconsistent: {0}")]
    TheoremViolation(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}
