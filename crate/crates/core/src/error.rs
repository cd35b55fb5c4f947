use thiserror::Error;

/// Reasons a graph or tree file fails to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex id {id} out of range 1..={n}")]
    VertexOutOfRange { id: u64, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u64),
    #[error("edge weight must be at least 1")]
    WeightTooSmall,
    #[error("total edge weight exceeds {}", crate::graph::MAX_TOTAL_WEIGHT)]
    Overflow,
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line `n m`")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid cut side: {0}")]
    InvalidSide(String),
    #[error("not a spanning tree: {0}")]
    NotSpanning(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least two vertices")]
    TooFewVertices,
    #[error("graph too large for exhaustive enumeration ({n} > {limit} vertices)")]
    TooLarge { n: usize, limit: usize },
    #[error("path from the root to itself is empty")]
    EmptyPath,
    #[error("subtree of node {0} has no edges")]
    EmptySubtree(usize),
    #[error("invalid lambda list: {0}")]
    InvalidLambda(String),
    #[error("unknown contracted vertex {0}")]
    UnknownVertex(usize),
    #[error("malformed bipartite problem: {0}")]
    MalformedProblem(String),
    #[error("tree packing is empty")]
    EmptyPacking,
    #[error("total weight is zero")]
    ZeroWeight,
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
