use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("shape of size {size} is too small: need at least {needed} boxes")]
    DegenerateShape { size: usize, needed: usize },

    #[error("{what} = {value} is out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("representation dimension {dimension} exceeds the dimension cap {cap}")]
    DimensionCap { dimension: String, cap: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    Containment { inner: String, outer: String },

    #[error("size difference {0} is not a nonnegative even number")]
    Parity(i64),

    #[error("variance must be nonnegative, got {0}")]
    NegativeVariance(f64),

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    NoConvergence { index: usize, iterations: usize },

    #[error("sample is empty")]
    EmptySample,

    #[error("closed form {closed} disagrees with trace oracle {oracle} for shape {shape}")]
    FormulaDiscrepancy {
        shape: String,
        closed: String,
        oracle: f64,
    },

    #[error("invalid limit profile: {0}")]
    InvalidProfile(String),

    #[error("invalid staircase specification: {0}")]
    InvalidSpec(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a failed
    /// computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NoConvergence { .. } | Error::FormulaDiscrepancy { .. } | Error::EmptySample
        )
    }
}
