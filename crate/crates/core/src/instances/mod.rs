//! Parameterized DAG families: alignment grids, k-step chains, random layered
//! DAGs and the lower-bound gadget.

use thiserror::Error;

use crate::dag::DagError;

mod chain;
mod gadget;
mod grid;
mod layered;

pub use chain::{build_chain, ChainWeights};
pub use gadget::{build_lb_gadget, GadgetEncoding, GadgetLayout, GadgetSpec, INACTIVE_PENALTY};
pub use grid::{build_grid, hirschberg_grid, GridLayout, GridOrder, GridSpec, Scoring};
pub use layered::{build_random_layered, LayeredSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error("band half-width {half_width} cannot connect (0,0) to ({m},{n})")]
    BandTooNarrow { m: usize, n: usize, half_width: usize },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}
