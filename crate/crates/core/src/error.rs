use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation exactly at a pole of the function.
    #[error("pole: {0}")]
    Pole(String),
    /// Argument outside the domain of the operation.
    #[error("domain: {0}")]
    Domain(String),
    /// A limit or series did not reach the requested tolerance.
    #[error("convergence: {0}")]
    Convergence(String),
    /// Index outside the supported table range.
    #[error("out of range: {0}")]
    OutOfRange(String),
    /// Malformed textual input (complex literals, CSV tables).
    #[error("parse: {0}")]
    Parse(String),
}

impl Error {
    /// Short class name used in diagnostics and exit-code mapping.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::Convergence(_) => "ConvergenceError",
            Error::OutOfRange(_) => "OutOfRange",
            Error::Parse(_) => "ParseError",
        }
    }

    /// The message without the class prefix.
    pub fn detail(&self) -> &str {
        match self {
            Error::Pole(m)
            | Error::Domain(m)
            | Error::Convergence(m)
            | Error::OutOfRange(m)
            | Error::Parse(m) => m,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Severity of a [`Diagnostic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Info,
    Warning,
    Error,
}

/// A non-fatal note attached to a result.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Diagnostic {
    pub level: Level,
    pub message: String,
}

impl Diagnostic {
    pub fn warning(message: impl Into<String>) -> Self {
        Self {
            level: Level::Warning,
            message: message.into(),
        }
    }

    pub fn info(message: impl Into<String>) -> Self {
        Self {
            level: Level::Info,
            message: message.into(),
        }
    }

    pub fn error(message: impl Into<String>) -> Self {
        Self {
            level: Level::Error,
            message: message.into(),
        }
    }
}
