//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("insufficient precision at continued fraction coefficient {index}")]
    InsufficientPrecision { index: usize },
    #[error("repeated eigenvalue: {0}")]
    RepeatedEigenvalue(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Coarse classification, used by the command line tool to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Precision,
    Hypothesis,
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_) | Error::Parse(_) | Error::RepeatedEigenvalue(_) => ErrorKind::Domain,
            Error::PrecisionExhausted(_) | Error::InsufficientPrecision { .. } | Error::Certification(_) => {
                ErrorKind::Precision
            }
            Error::Hypothesis(_) => ErrorKind::Hypothesis,
            Error::Io(_) => ErrorKind::Io,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
