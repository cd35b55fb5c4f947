//! CLI failures and their exit codes: 2 for anything wrong with the input,
//! 1 when a result fails verification or an internal check.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: twocut::ParseError },
    #[error("{0}")]
    Input(twocut::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) | CliError::Input(twocut::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

impl From<twocut::Error> for CliError {
    fn from(e: twocut::Error) -> Self {
        CliError::Input(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
