use thiserror::Error;

/// Errors produced by graph construction, metric-set queries and the solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("vertices of a pair must differ (got {0} twice)")]
    SameVertex(usize),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("invalid order {order} for {family} (need at least {min})")]
    InvalidOrder {
        family: &'static str,
        order: usize,
        min: usize,
    },

    #[error("graph order {0} exceeds the supported maximum of {max}", max = crate::graph::MAX_ORDER)]
    TooLarge(usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("operation needs a non-trivial graph (order >= 2), got order {0}")]
    TrivialGraph(usize),

    #[error("k = {k} exceeds the dimensional value k' = {max}")]
    KTooLarge { k: usize, max: usize },

    #[error("k must be at least 1")]
    ZeroK,

    #[error("instance is infeasible: pair ({0}, {1}) cannot be distinguished {2} times")]
    Infeasible(usize, usize, usize),

    #[error("vertex {0} is both forced and excluded")]
    ForcedExcluded(usize),

    #[error("search budget of {0} nodes exhausted")]
    ResourceExhausted(u64),

    #[error("formula undefined for n = {n}, k = {k}")]
    OutOfRange { n: usize, k: usize },

    #[error("corona needs {expected} attachments (base order), got {got}")]
    AttachmentCount { expected: usize, got: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
