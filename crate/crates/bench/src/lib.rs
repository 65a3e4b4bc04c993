//! Fixed instances shared by the benchmarks.

use ftrace::instances::{build_chain, build_grid, ChainWeights, GridSpec, Scoring};
use ftrace::sweep::random_dna;
use ftrace::DpDag;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// LCS grid of two random DNA strings, column-major.
pub fn grid(m: usize, n: usize, seed: u64) -> DpDag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_dna(&mut rng, m);
    let b = random_dna(&mut rng, n);
    build_grid(&GridSpec::new(a, b, Scoring::lcs())).expect("grid")
}

pub fn chain(length: u32, seed: u64) -> DpDag {
    build_chain(length, 1, ChainWeights::Seeded(seed)).expect("chain")
}
