use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IaError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("decision vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },

    #[error("degenerate beamformer: {which} column {column} has norm {norm:e}")]
    DegenerateColumn {
        which: String,
        column: usize,
        norm: f64,
    },

    #[error("ill-conditioned channel: {0}")]
    IllConditioned(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, IaError>;
