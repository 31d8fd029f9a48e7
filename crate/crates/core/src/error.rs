use thiserror::Error;

/// Errors raised by the library.
///
/// `Input` covers malformed values handed to an operation, `Precondition`
/// covers well-formed values that violate a documented requirement, and
/// `Parse` carries the 1-based line number of the offending text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn parse<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: msg.into() })
}
