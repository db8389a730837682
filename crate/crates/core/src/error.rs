use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed configuration text or dataset row.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Invalid row in an element dataset file (1-based line number).
    #[error("dataset error at line {line}: {message}")]
    Dataset { line: usize, message: String },

    /// A record that was expected in a dataset is missing.
    #[error("lookup error: {0}")]
    Lookup(String),

    /// An iterative solver failed to converge.
    #[error("solver error: {message}")]
    Solver {
        message: String,
        /// Last coupling at which a continuation was still converged.
        last_good_g: Option<f64>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }

    pub(crate) fn solver(msg: impl Into<String>, last_good_g: Option<f64>) -> Self {
        Error::Solver {
            message: msg.into(),
            last_good_g,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
