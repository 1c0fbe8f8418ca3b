use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller broke a precondition (mismatched shapes, bad indices, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// The input is well-formed but outside what the operation supports.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A truncated computation needed more headroom than it was given.
    #[error("truncation shortfall: need order {needed}, have {available}")]
    Truncation { needed: usize, available: usize },

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An invariant that should be impossible to break was broken.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
