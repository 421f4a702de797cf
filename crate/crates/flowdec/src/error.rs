use crate::graph::{EdgeId, VertexId};

/// Errors produced by graph validation, solvers and generators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one edge and two vertices")]
    EmptyGraph,
    #[error("vertex {0} does not exist")]
    InvalidVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("graph contains a cycle")]
    CycleDetected,
    #[error("multiple sources: vertices {0} and {1} both have in-degree 0")]
    MultipleSources(VertexId, VertexId),
    #[error("multiple sinks: vertices {0} and {1} both have out-degree 0")]
    MultipleSinks(VertexId, VertexId),
    #[error("vertex {0} lies on no source-sink path")]
    DanglingVertex(VertexId),
    #[error("flow conservation violated at vertex {0}")]
    ConservationViolated(VertexId),
    #[error("negative flow on edge {0}")]
    NegativeFlow(EdgeId),
    #[error("flow refers to unknown or missing edge {0}")]
    UnknownEdge(EdgeId),
    #[error("flow value is zero")]
    EmptyFlow,
    #[error("no flow satisfies the given bounds")]
    Infeasible,
    #[error("lower bound exceeds upper bound on edge {0}")]
    InvalidBounds(EdgeId),
    #[error("witness flow violates the problem bounds: {0}")]
    InvalidWitness(String),
    #[error("integer overflow")]
    IntegerOverflow,
    #[error("parity invariant violated; this indicates a solver bug")]
    ParityAssertionFailed,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{op} precondition violated on edge {edge}")]
    PreconditionViolated { op: &'static str, edge: EdgeId },
    #[error("contracting edge {0} would leave an empty graph")]
    DegenerateContraction(EdgeId),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("benchmark consistency check failed: {0}")]
    BenchConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
