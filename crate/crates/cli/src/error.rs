use thiserror::Error;

/// Command failure, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("inconclusive: {0}")]
    Budget(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Precondition(_) => 4,
        }
    }
}
