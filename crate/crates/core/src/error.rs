use thiserror::Error;

pub type Result<T> = std::result::Result<T, BiotError>;

#[derive(Debug, Error)]
pub enum BiotError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("iterative solver did not converge after {iterations} iterations (relative residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("matrix is not positive definite (pivot {pivot:.3e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("matrix is singular to working precision at row {row}")]
    Singular { row: usize },

    #[error("solution failed the residual check (relative residual {residual:.3e} > {tolerance:.1e})")]
    ResidualCheck { residual: f64, tolerance: f64 },

    #[error("kernel evaluated at lag {lag} outside its declared range [{min}, {max}]")]
    KernelRange { lag: f64, min: f64, max: f64 },

    #[error("fixed-stress iteration did not converge at level {level} after {iterations} iterations (last relative increment {increment:.3e})")]
    SplittingNotConverged {
        level: usize,
        iterations: usize,
        increment: f64,
    },

    #[error("fixed-stress iteration diverged at level {level} after {iterations} iterations (relative increment {increment:.3e})")]
    SplittingDiverged {
        level: usize,
        iterations: usize,
        increment: f64,
    },

    #[error("linear solve failed at time level {level}: {source}")]
    AtLevel {
        level: usize,
        #[source]
        source: Box<BiotError>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl BiotError {
    pub(crate) fn at_level(self, level: usize) -> Self {
        match self {
            e @ (BiotError::AtLevel { .. }
            | BiotError::SplittingNotConverged { .. }
            | BiotError::SplittingDiverged { .. }) => e,
            e => BiotError::AtLevel {
                level,
                source: Box::new(e),
            },
        }
    }

    /// True for the splitting failures (max iterations reached or divergence).
    pub fn is_iteration_exhaustion(&self) -> bool {
        matches!(
            self,
            BiotError::SplittingNotConverged { .. } | BiotError::SplittingDiverged { .. }
        )
    }
}
