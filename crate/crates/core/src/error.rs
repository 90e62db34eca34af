use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate operator: beta must be nonzero (got alpha = {alpha}, beta = {beta})")]
    DegenerateOperator { alpha: f64, beta: f64 },

    #[error("algebra mismatch: A({0}, {1}) vs A({2}, {3})")]
    AlgebraMismatch(f64, f64, f64, f64),

    #[error("{0} + {1}j is zero or a zero divisor and has no inverse")]
    NotInvertible(f64, f64),

    #[error("input is not a solution: residual coefficient {max_abs:e} exceeds {tolerance:e} x {scale:e}")]
    NotASolution {
        max_abs: f64,
        tolerance: f64,
        scale: f64,
    },

    #[error("under-determined fit: {samples} samples for {columns} basis functions (need at least {required})")]
    UnderDetermined {
        samples: usize,
        columns: usize,
        required: usize,
    },

    #[error("degenerate basis: every collocation column was rank deficient")]
    DegenerateBasis,

    #[error("invalid boundary sample: {0}")]
    InvalidSample(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
