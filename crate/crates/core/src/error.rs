use thiserror::Error;

/// Errors produced by evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The quantity is infinite for the requested arguments.
    #[error("divergent: {0}")]
    Divergence(String),
    /// A numerical method failed to reach its tolerance.
    #[error("numerical failure ({method}): {message}")]
    NumericalFailure {
        method: &'static str,
        message: String,
    },
    /// A parameter combination the implementation does not cover.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed request (unknown suite, empty grid, ...).
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn failure(method: &'static str, msg: impl Into<String>) -> Error {
    Error::NumericalFailure {
        method,
        message: msg.into(),
    }
}
