//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error type. The variants map onto the CLI exit codes:
/// input/parse problems (2), verification failures (1), resource caps (3).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),

    /// A verification or precondition check failed on otherwise valid input.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A configured resource cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// Text-format parse failure.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::ResourceCap(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
