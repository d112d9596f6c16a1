use thiserror::Error;

use winding_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
    pub const SIMULATION_BUDGET: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::NonConvergence { .. }
                | CoreError::EnvelopeViolated { .. }
                | CoreError::NonFiniteSample { .. } => exit::NON_CONVERGENCE,
                CoreError::StepBudgetExceeded { .. } => exit::SIMULATION_BUDGET,
                _ => exit::USAGE,
            },
            CliError::Usage(_) | CliError::Parse(_) => exit::USAGE,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => exit::USAGE,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
