use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rating {value} at index {index} lies outside the scale [{min}, {max}]")]
    ScaleViolation {
        index: usize,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("rating {value} at index {index} is not an integer Likert value")]
    NonIntegerRating { index: usize, value: f64 },

    #[error("invalid rating scale [{min}, {max}]")]
    InvalidScale { min: f64, max: f64 },

    #[error("competence entry ({row}, {col}) = {value} is not 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: f64 },

    #[error("competence diagonal entry ({index}, {index}) is nonzero")]
    NonZeroDiagonal { index: usize },

    #[error("competence matrix row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("index {index} out of range for {len} students")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate network: no student is perceived competent by any other")]
    DegenerateNetwork,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegenerateNetwork => 3,
            Error::NoConvergence { .. } => 4,
            _ => 2,
        }
    }
}
