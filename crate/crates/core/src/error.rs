use thiserror::Error;

/// Failure modes shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// Input data violates a structural invariant (illegal seed, overlapping cells, ...).
    #[error("validation failed: {0}")]
    Validation(String),
    /// The request would exceed a configured size cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A truncated series could not reach the requested accuracy.
    #[error("accuracy not reached: {message} (achieved bound {achieved:e})")]
    Accuracy { message: String, achieved: f64 },
    /// A numerical scheme produced output violating its own invariants.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
