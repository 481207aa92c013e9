use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A domain type's construction invariants were violated.
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid blur model: {0}")]
    InvalidBlur(String),

    /// Sampling grid rejected against a signal (offset, coverage, or a sample
    /// coinciding exactly with a discontinuity point).
    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("invalid quantized sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid noise specification: {0}")]
    InvalidNoise(String),

    /// The blur/spacing regime required by the measurement-matrix structure
    /// does not hold; the matrix form is undefined in this build.
    #[error("regime violation: {0}")]
    RegimeViolation(String),

    /// A sample value could not be attributed to any plateau or transition.
    #[error("attribution failure: {0}")]
    Attribution(String),

    /// A constraint system has no solution at the queried blur width.
    #[error("constraint system infeasible: {0}")]
    Infeasible(String),

    #[error("domain error: {0}")]
    Domain(String),
}
