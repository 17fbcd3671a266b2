use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data that violates a type invariant (ragged points, NaN, bad files).
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A filtration, boundary matrix or pair that breaks its structural invariants.
    #[error("structural error: {0}")]
    Structural(String),

    /// The approximation guarantee does not hold for the requested parameters.
    #[error("guarantee lapsed: scale {alpha} must be strictly below radius {radius}")]
    GuaranteeLapsed { alpha: f64, radius: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
