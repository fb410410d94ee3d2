use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {msg}")]
    Config { field: String, msg: String },
    #[error("{path}: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] slepian_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 2 for validation failures, 1 for numerical or I/O failures.
    pub fn exit_code(&self) -> i32 {
        use slepian_core::Error as E;
        match self {
            Self::Config { .. } | Self::Format { .. } => 2,
            Self::Io { .. } => 1,
            Self::Core(E::EigenvalueOutOfRange { .. } | E::NonConvergence(_)) => 1,
            Self::Core(_) => 2,
        }
    }
}
