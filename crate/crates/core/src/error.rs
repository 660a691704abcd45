use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Syntax error in a group specification, with the byte offset it was found at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Parse(ParseError),
    /// A computation would exceed a configured resource limit.
    LimitExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
        flag: &'static str,
    },
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// The input violates the precondition of an operation.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => e.fmt(f),
            Error::LimitExceeded {
                what,
                requested,
                limit,
                flag,
            } => write!(
                f,
                "{what} = {requested} exceeds the limit {limit} (raise it with {flag})"
            ),
            Error::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} times {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::InvalidInput(msg) => f.write_str(msg),
        }
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl core::error::Error for Error {}
impl core::error::Error for ParseError {}
