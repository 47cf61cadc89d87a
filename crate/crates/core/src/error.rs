use thiserror::Error;

/// Errors raised by the laboratory's computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the operation's domain (zero inverse, bad parameter range, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured work or memory budget would be exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// Malformed textual input (step laws, polynomials).
    #[error("parse error: {0}")]
    Parse(String),
    /// A numerical routine failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// An invariant that must hold was observed to fail.
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
