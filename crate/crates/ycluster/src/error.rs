use thiserror::Error;

use crate::quiver::VertexId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division is not exact: {0}")]
    NonExactDivision(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vertex {0} is not in the quiver")]
    InvalidVertex(VertexId),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("simultaneous mutation of adjacent vertices {0} and {1}")]
    AdjacencyViolation(VertexId, VertexId),
    #[error("({layer}, {time}) is not a forward mutation point")]
    Parity { layer: usize, time: i64 },
    #[error("trajectory carries no cluster variables")]
    MissingSymbolicRun,
    #[error("trajectory too short: need u up to {needed}, have {have}")]
    InsufficientLength { needed: i64, have: i64 },
    #[error("value {0} is not a positive real")]
    NonPositiveValue(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
