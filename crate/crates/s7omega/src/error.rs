use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument is out of range or inconsistent.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An operation that requires a matrix satisfying the reduction
    /// condition was called on one that does not.
    #[error("matrix does not satisfy the reduction condition: {0}")]
    State(String),

    /// Input text or JSON could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A configurable work limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An internal cross-check failed. Either there is a bug or one of
    /// the identities this library is built on is false.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn state(msg: impl Into<String>) -> Self {
        Error::State(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
