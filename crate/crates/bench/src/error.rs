use std::io;

use ia_core::IaError;
use ia_swarm::SwarmError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Model(#[from] IaError),

    #[error(transparent)]
    Optimizer(#[from] SwarmError),
}

impl BenchError {
    pub fn io(path: impl AsRef<std::path::Path>, source: io::Error) -> Self {
        BenchError::Io { path: path.as_ref().display().to_string(), source }
    }

    /// Process exit code: 2 for I/O failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Io { .. } | BenchError::Model(IaError::Io(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, BenchError>;
