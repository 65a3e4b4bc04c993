use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BuildError;
use crate::dag::{DagBuilder, DpDag, DEFAULT_DELTA_MAX};
use crate::semiring::{SemiringKind, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainWeights {
    /// Every edge weighs 1.
    Unit,
    /// Weights drawn uniformly from `-4..=4`.
    Seeded(u64),
    /// One weight per edge in `(from, to)` order.
    Explicit(Vec<i64>),
}

/// `length` vertices with an edge `(i, i+d)` for every `1 <= d <= step`.
/// Source 1, sink `length`.
pub fn build_chain(length: u32, step: u32, weights: ChainWeights) -> Result<DpDag, BuildError> {
    if length == 0 {
        return Err(BuildError::Invalid("chain length must be at least 1".into()));
    }
    if step == 0 || (length > 1 && step >= length) {
        return Err(BuildError::Invalid(format!("step must satisfy 1 <= k < T, got k={step}, T={length}")));
    }
    let edge_count: usize = (1..length).map(|i| step.min(length - i) as usize).sum();
    let mut rng = match &weights {
        ChainWeights::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    if let ChainWeights::Explicit(w) = &weights {
        if w.len() != edge_count {
            return Err(BuildError::Invalid(format!("expected {edge_count} weights, got {}", w.len())));
        }
    }
    let mut b = DagBuilder::new(length, SemiringKind::MaxPlus).delta_max(DEFAULT_DELTA_MAX.max(step as usize));
    b.add_source(1, Value::ONE).add_sink(length);
    let mut idx = 0;
    for i in 1..length {
        for d in 1..=step.min(length - i) {
            let w = match &weights {
                ChainWeights::Unit => 1,
                ChainWeights::Seeded(_) => rng.as_mut().unwrap().gen_range(-4..=4),
                ChainWeights::Explicit(list) => list[idx],
            };
            idx += 1;
            b.add_edge(i, i + d, Value::new(w));
        }
    }
    Ok(b.build()?)
}
