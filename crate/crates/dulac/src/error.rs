//! Error types shared across the crate.

use thiserror::Error;

/// Failure of an exact scalar operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Errors produced while reading field documents and coefficient strings.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ParseError {
    pub fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError::Field {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Stable machine-readable tag for error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Json { .. } => "malformed-json",
            ParseError::Field { .. } => "invalid-field",
            ParseError::Io { .. } => "io",
        }
    }
}

/// Crate-wide operational error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("eigen data inconsistent with linear part: {0}")]
    EigenMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn degree(msg: impl Into<String>) -> Self {
        Error::DegreeOutOfRange(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Stable machine-readable tag for error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::DegreeOutOfRange(_) => "degree-out-of-range",
            Error::Arithmetic(_) => "arithmetic",
            Error::SingularMatrix => "singular-matrix",
            Error::EigenMismatch(_) => "eigen-mismatch",
            Error::Precondition(_) => "precondition",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::Parse(e) => e.kind(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
