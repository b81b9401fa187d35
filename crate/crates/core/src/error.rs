use thiserror::Error;

/// Errors raised across the wavelet toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A quantity exceeded the range where it can be represented exactly.
    #[error("capacity exceeded: {what} (maximum supported {max})")]
    Capacity { what: String, max: usize },

    /// An argument was outside its admissible domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A state vector does not fit in the requested truncation dimension.
    #[error("truncation: {0}")]
    Truncation(String),

    /// Coefficients violate the weighted-sum admissibility constraint.
    #[error("inadmissible coefficients: weighted even-index sum is {residual:e}")]
    Inadmissible { residual: f64 },

    /// The input lies entirely along the constraint normal; projection leaves nothing.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A numerical integral failed its refinement test.
    #[error("accuracy: {0}")]
    Accuracy(String),

    /// The admissibility-constant integral grows under refinement.
    #[error("divergent integral: value {coarse:e} at cutoff {eps_coarse:e} grew to {fine:e} at {eps_fine:e}")]
    Divergent {
        coarse: f64,
        fine: f64,
        eps_coarse: f64,
        eps_fine: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
