use thiserror::Error;

use crate::digraph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("arc or edge index {index} out of range ({count} present)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex pair {{{0}, {1}}} supplied more than once")]
    DuplicatePair(Vertex, Vertex),
    #[error("a monitoring pair needs two distinct vertices, got {0} twice")]
    EqualVertices(Vertex),
    #[error("input graph must be connected")]
    DisconnectedInput,
    #[error(
        "search budget exhausted after {nodes} nodes; best known MAG-set has size {best_size}"
    )]
    BudgetExceeded {
        nodes: u64,
        best_size: usize,
        best: Vec<Vertex>,
    },
    #[error("graph has {m} edges, above the cap of {cap}")]
    TooManyEdges { m: usize, cap: usize },
    #[error("orientation mask has width {got}, graph has {expected} edges")]
    WidthMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    BadParam(String),
    #[error("input graph is not a tree")]
    NotATree,
    #[error("input graph is not bipartite with the given parts")]
    NotBipartite,
    #[error("input graph has no cycle")]
    Acyclic,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
