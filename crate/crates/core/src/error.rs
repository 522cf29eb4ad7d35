use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("not a blocking set: alpha stays at {alpha}")]
    NotBlocking { alpha: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("not a tree of bridges: {0}")]
    NotATreeOfBridges(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("checked-mode assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
