use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The Jacobi iteration failed to push the off-diagonal norm below
    /// tolerance within the sweep budget.
    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})"
    )]
    NonConvergence { sweeps: usize, off_norm: f64 },

    /// A scalar function applied through a spectral decomposition was
    /// undefined (non-finite) at one of the eigenvalues.
    #[error("matrix function undefined at eigenvalue {eigenvalue}: {reason}")]
    DomainError {
        eigenvalue: f64,
        reason: &'static str,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("temperature must be positive, got {0}")]
    InvalidTemperature(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("outside engine domain: {0}")]
    OutOfEngineDomain(String),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("search interval is empty")]
    EmptyInterval,

    #[error("work is non-positive over the whole search interval")]
    NoPositiveWork,

    #[error("unknown figure id: {0}")]
    UnknownFigure(String),
}
