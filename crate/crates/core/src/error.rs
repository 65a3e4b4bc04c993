use thiserror::Error;

use crate::dag::{DagError, VertexId};
use crate::semiring::Value;

/// Errors raised by forward passes, traceback and the oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error(transparent)]
    Dag(#[from] DagError),
    /// The requested sink has value bottom: no source reaches it.
    #[error("no witness: sink {sink} is unreachable from every source")]
    NoWitness { sink: VertexId },
    #[error("vertex {vertex} is not a sink")]
    NotASink { vertex: VertexId },
    /// Every middle-frontier candidate combines to bottom.
    #[error("no feasible crossing vertex")]
    NoFeasibleCrossing,
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An in-line invariant check failed. Always an implementation defect.
    #[error("invariant violated: {0}")]
    Invariant(#[from] Violation),
}

/// Which checked invariant failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("frontier buffer held {size} entries after vertex {vertex}, limit {limit}")]
    BufferBound { vertex: VertexId, size: usize, limit: usize },
    #[error("decomposition at [{lo}, {hi}]: max f⊗g = {found}, expected {expected}")]
    Decomposition { lo: VertexId, hi: VertexId, found: Value, expected: Value },
    #[error("crossing vertex {vertex} at [{lo}, {hi}] is not a maximizer")]
    Crossing { lo: VertexId, hi: VertexId, vertex: VertexId },
    #[error("base case [{lo}, {hi}] recomputed {found} for target {target}, expected {expected}")]
    BaseCaseValue { lo: VertexId, hi: VertexId, target: VertexId, found: Value, expected: Value },
    #[error("base case [{lo}, {hi}] backtrack from {target} did not reach the boundary")]
    BaseCaseBoundary { lo: VertexId, hi: VertexId, target: VertexId },
    #[error("recursion depth {depth} exceeds bound {bound}")]
    Depth { depth: u32, bound: u32 },
    #[error("peak live words {words} exceeds bound {bound}")]
    Space { words: usize, bound: usize },
    #[error("returned path is invalid: {0}")]
    Path(String),
}
