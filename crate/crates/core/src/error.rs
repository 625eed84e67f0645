use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments that violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),
    /// Mathematical domain violation (non-coprime pair, constant term not 1, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An enclosure was too wide to decide, or a series tail could not be bounded.
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("unknown spec `{name}`; registered specs: {registered}")]
    UnknownSpec { name: String, registered: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
