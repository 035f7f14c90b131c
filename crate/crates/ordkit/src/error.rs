use std::path::PathBuf;

use ordkit_core::{GroupError, LiftError, ObstructionError, PresentationError};
use thiserror::Error;

/// Everything that stops a command before it can produce a report. All of
/// these map to exit code 2; failed mathematical checks are reports, not
/// errors.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("malformed presentation in {path}: {source}")]
    Presentation { path: PathBuf, source: PresentationError },
    #[error(transparent)]
    Group(GroupError),
    #[error(transparent)]
    Lift(LiftError),
    #[error(transparent)]
    Obstruction(ObstructionError),
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::BallTooLarge { .. } => CliError::Resource(e.to_string()),
            other => CliError::Group(other),
        }
    }
}

impl From<LiftError> for CliError {
    fn from(e: LiftError) -> Self {
        match e {
            LiftError::Group(g) => g.into(),
            other => CliError::Lift(other),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Group(g) => g.into(),
            ObstructionError::Lift(l) => l.into(),
            ObstructionError::EnumerationCap { .. } => CliError::Resource(e.to_string()),
            other => CliError::Obstruction(other),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
