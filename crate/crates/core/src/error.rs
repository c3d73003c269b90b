use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// A mathematical precondition of the requested computation failed.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// The requested backend cannot represent the data (e.g. irrational roots in exact mode).
    #[error("{0}")]
    Unsupported(String),
    /// More t-terms are needed than the family carries.
    #[error("{0}")]
    Truncation(String),
    #[error("degree limit exceeded: {0}")]
    DegreeLimit(String),
    #[error("not divisible")]
    NotDivisible,
    /// Two independent routes disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::Truncation(_) | Error::DegreeLimit(_) => 3,
            Error::Inconsistency(_) => 4,
            Error::Hypothesis(_) | Error::Unsupported(_) | Error::NotDivisible => 1,
        }
    }

    pub(crate) fn hyp(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn trunc(msg: impl Into<String>) -> Self {
        Error::Truncation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
