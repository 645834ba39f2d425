//! Shared error kinds. Every crate in the workspace reports failures through
//! this enum so the CLI can map them uniformly onto exit codes
//! (domain/unsupported -> 2, capacity -> 3, internal -> 4).

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input is well-formed but exceeds a configured enumeration cap.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A feature the input asks for is deliberately not supported.
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// An invariant the algorithms are supposed to maintain was violated;
    /// surfacing this is a bug detector, not a user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}

pub fn unsupported(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}

pub fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
