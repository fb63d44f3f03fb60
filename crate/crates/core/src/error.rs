use thiserror::Error;

/// Errors produced by constructors, parsers and the exact searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not Eulerian at vertex {vertex}: {reason}")]
    NotEulerian { vertex: usize, reason: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
