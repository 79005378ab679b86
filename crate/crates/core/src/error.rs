use thiserror::Error;

pub type Result<T> = std::result::Result<T, MpcError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpcError {
    #[error("graph contains a cycle through vertex {0}")]
    CycleDetected(u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("instance with {n} vertices exceeds the oracle limit of {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("{m} edges requested but at most {max} fit on {n} vertices")]
    TooDense { n: usize, m: u64, max: u64 },
    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),
    #[error("invalid path cover: {0}")]
    InvalidCover(String),
    #[error("infeasible flow: {0}")]
    InfeasibleFlow(String),
    #[error("not a residual path: {0}")]
    NotResidualPath(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("deadline exceeded")]
    TimedOut,
}
