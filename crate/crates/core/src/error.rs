use thiserror::Error;

/// Errors raised by the library. Domain failures that are reportable results
/// (an `Undetermined` certificate, a failed relation check) are not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
    #[error("vertex not mutable: {0}")]
    NotMutable(String),
    #[error("degenerate quadratic pairing: {0}")]
    DegeneratePairing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("model undetermined: {0}")]
    Undetermined(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("point counts are not polynomial: {0}")]
    Polynomiality(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}
