use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SwarmError {
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("cost {0} is negative; fitness needs non-negative costs")]
    NegativeCost(f64),

    #[error("{what} has length {got}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
}

pub type Result<T> = std::result::Result<T, SwarmError>;
