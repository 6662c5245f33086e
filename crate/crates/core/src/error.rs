use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex `{0}` is not in the graph")]
    UnknownVertex(String),

    #[error("invalid vertex name `{0}`: names must match [A-Za-z0-9_]+")]
    InvalidName(String),

    #[error("self-loop at `{0}` is not allowed in a simplicial graph")]
    SelfLoop(String),

    #[error("the graph is empty")]
    EmptyGraph,

    #[error("graph has {actual} vertices, limit is {limit}")]
    Capacity { limit: usize, actual: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
