use thiserror::Error;

/// Errors raised anywhere in the lab.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {x} lies outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("tiling error: {0}")]
    Tiling(String),

    #[error("unsupported exponent {0} (maximum is 12)")]
    UnsupportedExponent(u32),

    #[error("{context}: accuracy target missed (best value {value}, error estimate {estimate:e})")]
    Accuracy { context: String, value: f64, estimate: f64 },

    #[error("{context}non-finite integrand value at x = {x}")]
    Evaluation { context: String, x: f64 },

    #[error("non-removable singularity of sin({mu} x)/sin x at x = {x}")]
    NonRemovable { mu: f64, x: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Prefixes the context of a numerical failure so callers can tell which
    /// integral gave up.
    pub(crate) fn within(self, what: impl FnOnce() -> String) -> Self {
        match self {
            Error::Accuracy {
                context,
                value,
                estimate,
            } => Error::Accuracy {
                context: format!("{}: {}", what(), context),
                value,
                estimate,
            },
            Error::Evaluation { context, x } => Error::Evaluation {
                context: format!("{}: {}", what(), context),
                x,
            },
            other => other,
        }
    }

    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Accuracy { .. } | Error::Evaluation { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
