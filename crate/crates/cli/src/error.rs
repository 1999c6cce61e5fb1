use std::path::PathBuf;

use thiserror::Error;

/// Everything the binary can fail with. [`CliError::exit_code`] maps each to a process status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] mixmeter_core::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for I/O, 4 for eigensolver non-convergence, 3 for every other rejection.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Core(mixmeter_core::Error::NoConvergence { .. }) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
