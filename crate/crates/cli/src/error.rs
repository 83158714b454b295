use std::path::PathBuf;

use meshsum_core::analytics::SeedError;
use meshsum_core::mesh::MeshError;
use meshsum_core::render::LayoutError;
use meshsum_core::summation::SummationError;
use thiserror::Error;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    InputError = 2,
}

impl ExitStatus {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            ExitStatus::Success
        } else {
            ExitStatus::VerificationFailed
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Errors that abort a command. All of them are input errors (exit 2);
/// verification failures are reported in the output instead.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Summation(#[from] SummationError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        ExitStatus::InputError
    }
}
