use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BuildError;
use crate::dag::{DagBuilder, DpDag, DEFAULT_DELTA_MAX};
use crate::semiring::{SemiringKind, Value};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayeredSpec {
    pub layers: u32,
    pub width: u32,
    /// Probability of each edge between consecutive layers, in `(0, 1]`.
    pub density: f64,
    pub seed: u64,
}

/// Smallest and largest sampled edge weight.
pub const WEIGHT_RANGE: (i64, i64) = (-4, 4);

/// Vertices are numbered layer by layer. The first layer holds the sources
/// (initial value 0), the last layer the sinks. Every other vertex gets at
/// least one predecessor in the layer before it.
pub fn build_random_layered(spec: LayeredSpec) -> Result<DpDag, BuildError> {
    let LayeredSpec { layers, width, density, seed } = spec;
    if layers == 0 || width == 0 {
        return Err(BuildError::Invalid("layers and width must be at least 1".into()));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(BuildError::Invalid(format!("density must lie in (0, 1], got {density}")));
    }
    let n = layers.checked_mul(width).ok_or_else(|| BuildError::Invalid("layers × width overflows".into()))?;
    let id = |layer: u32, k: u32| layer * width + k + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = DagBuilder::new(n, SemiringKind::MaxPlus).delta_max(DEFAULT_DELTA_MAX.max(width as usize));
    for k in 0..width {
        b.add_source(id(0, k), Value::ONE);
        b.add_sink(id(layers - 1, k));
    }
    for layer in 1..layers {
        for k in 0..width {
            let mut any = false;
            for j in 0..width {
                if rng.gen_bool(density) {
                    any = true;
                    b.add_edge(
                        id(layer - 1, j),
                        id(layer, k),
                        Value::new(rng.gen_range(WEIGHT_RANGE.0..=WEIGHT_RANGE.1)),
                    );
                }
            }
            if !any {
                let j = rng.gen_range(0..width);
                b.add_edge(id(layer - 1, j), id(layer, k), Value::new(rng.gen_range(WEIGHT_RANGE.0..=WEIGHT_RANGE.1)));
            }
        }
    }
    Ok(b.build()?)
}
