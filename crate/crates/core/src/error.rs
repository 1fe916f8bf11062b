use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("polynomial is not square-free")]
    NotSquareFree,
    /// An input violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Precision, depth, or evaluation budget exhausted before a decision was reached.
    #[error("resource exhausted: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
