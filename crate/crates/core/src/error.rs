use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("d must be >= 2 (got {0}); the line graph d=1 is rejected")]
    InvalidDegree(u32),

    #[error("k must be >= 1 (got {0})")]
    InvalidStiflingThreshold(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fixed-point iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NonConvergence { iterations: u64, residual: f64 },

    #[error("offspring mean {mean} >= 1: total progeny has no finite expectation")]
    SupercriticalMean { mean: String },

    #[error("vertex budget of {budget} exceeded; raise the budget or lower the depth limit")]
    VertexBudgetExceeded { budget: usize },

    #[error("{0}")]
    UnsupportedParams(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 validation, 2 non-convergence,
    /// 3 resource cap.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } => 2,
            Error::VertexBudgetExceeded { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
