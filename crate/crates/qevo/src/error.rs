use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// Fitness was requested for an infeasible selection. This signals a
    /// missing repair call, not a runtime condition.
    #[error("constraint violation: selected weight {weight} exceeds capacity {capacity}")]
    ConstraintViolation { weight: u64, capacity: f64 },

    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 2 for configuration or parse
    /// problems, 1 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::InvalidConfiguration(_)
            | Error::UnsupportedInstance(_)
            | Error::Parse { .. } => 2,
            Error::ConstraintViolation { .. } | Error::Io { .. } => 1,
        }
    }
}
