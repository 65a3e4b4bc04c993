//! Frontier-space traceback for max-plus dynamic programs on DAGs.
//!
//! A [`DpDag`] lists its vertices in topological order. [`traceback`] returns
//! the same optimal path a full back-pointer table would give, while keeping
//! only the frontier of the current cut plus a logarithmic recursion stack.
//! [`oracle`] holds that full-table baseline.

pub mod dag;
pub mod dagfile;
pub mod error;
pub mod forward;
pub mod instances;
pub mod oracle;
pub mod semiring;
pub mod sweep;
pub mod traceback;

pub use dag::{frontier_at, frontier_width, middle_frontier, DagBuilder, DagError, DpDag, Edge, Interval, VertexId};
pub use error::{TraceError, Violation};
pub use forward::{global_forward, local_prefix_values, suffix_value, Boundary, FrontierBuffer};
pub use oracle::{
    compare_runs, oracle_run, oracle_solve, oracle_traceback, verify, verify_pair, ComparisonReport, FullTable,
    Verdict, Verification,
};
pub use semiring::{SemiringKind, Value};
pub use traceback::{
    base_case, select_midpoint, traceback, traceback_into, AssertionLevel, PathSink, RunMetrics, TracebackConfig,
    WitnessPath,
};
