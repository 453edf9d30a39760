//! Batch front end for the data-sharing duopoly model: scenario files,
//! reports, sweeps and the profit figure.

pub mod app;
pub mod figure;
pub mod format;
pub mod report;
pub mod scenario_file;
pub mod sweep;

use flgame_core::GameError;
use thiserror::Error;

pub use scenario_file::{parse_scenario, read_scenario, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("interior-duopoly condition fails: {0}")]
    Condition(String),
    #[error(transparent)]
    Model(GameError),
    #[error("figure data check failed: {0}")]
    Invariant(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::ConditionViolated(detail) => CliError::Condition(detail),
            other => CliError::Model(other),
        }
    }
}

impl CliError {
    /// 2 for unusable input, 1 for everything the model itself rejects.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
