use biot_core::BiotError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Solver(#[from] BiotError),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for configuration, 4 for splitting exhaustion or divergence,
    /// 3 for any other failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Solver(BiotError::InvalidInput(_)) => 2,
            CliError::Solver(e) if e.is_iteration_exhaustion() => 4,
            _ => 3,
        }
    }
}
