use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),

    /// Parse failure with a source location (1-based).
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Collinear/coincident input where general position is required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// A guarantee that the construction proves was not met. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("optimization did not converge: {message} (best f = {best_value})")]
    Optimization { message: String, best_value: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::ParseAt { .. } => 2,
            Error::DimensionMismatch { .. }
            | Error::UnsupportedDimension(_)
            | Error::Precondition(_)
            | Error::Degenerate(_)
            | Error::Optimization { .. } => 3,
            Error::BudgetExceeded { .. } => 4,
            Error::Internal(_) => 5,
            Error::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
