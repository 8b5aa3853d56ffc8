use thiserror::Error;

/// Errors raised by the curve model, the solver and the oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Argument outside the domain of a reduced function (e.g. `xi > eta`).
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters fall outside the regime an operation is defined for.
    #[error("regime error: {0}")]
    Regime(String),

    #[error("invalid vertex spec at vertex {index}: {reason}")]
    InvalidSpec { index: usize, reason: String },

    #[error("graph conversion failed: {0}")]
    Conversion(String),

    #[error("no xi in [0, {eta}] satisfies the area constraint")]
    InfeasibleEta { eta: f64 },

    #[error("degenerate endpoint slopes (xi == eta); use the affine branch")]
    Degenerate,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
