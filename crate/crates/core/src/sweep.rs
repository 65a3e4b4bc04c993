//! Seeded instance families and single-run measurement rows, shared by the
//! command line `sweep` and the scaling checks.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dag::DpDag;
use crate::instances::{
    build_chain, build_grid, build_lb_gadget, build_random_layered, BuildError, ChainWeights, GadgetEncoding,
    GadgetSpec, GridSpec, LayeredSpec, Scoring,
};
use crate::traceback::{traceback, TracebackConfig};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// LCS grid of random DNA strings of lengths `m` and `n`, column-major.
    Grid {
        m: usize,
        n: usize,
    },
    /// Banded LCS grid of two related random strings of length `n`.
    Banded {
        n: usize,
        band: u32,
    },
    Chain {
        length: u32,
        step: u32,
    },
    Layered {
        layers: u32,
        width: u32,
        density: f64,
    },
    /// Full-pattern gadget with a random non-empty pattern.
    Gadget {
        omega: u32,
        layers: u32,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grid { .. } => "grid",
            Family::Banded { .. } => "banded",
            Family::Chain { .. } => "chain",
            Family::Layered { .. } => "layered",
            Family::Gadget { .. } => "gadget",
        }
    }

    pub fn params(&self) -> String {
        match *self {
            Family::Grid { m, n } => format!("m={m};n={n}"),
            Family::Banded { n, band } => format!("n={n};band={band}"),
            Family::Chain { length, step } => format!("length={length};step={step}"),
            Family::Layered { layers, width, density } => format!("layers={layers};width={width};density={density}"),
            Family::Gadget { omega, layers } => format!("omega={omega};layers={layers}"),
        }
    }

    pub fn build(&self, seed: u64) -> Result<DpDag, BuildError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match *self {
            Family::Grid { m, n } => {
                let a = random_dna(&mut rng, m);
                let b = random_dna(&mut rng, n);
                build_grid(&GridSpec::new(a, b, Scoring::lcs()))
            }
            Family::Banded { n, band } => {
                let a = random_dna(&mut rng, n);
                let b = mutate(&mut rng, &a, 0.2);
                build_grid(&GridSpec::new(a, b, Scoring::alignment()).band(band))
            }
            Family::Chain { length, step } => build_chain(length, step, ChainWeights::Seeded(seed)),
            Family::Layered { layers, width, density } => {
                build_random_layered(LayeredSpec { layers, width, density, seed })
            }
            Family::Gadget { omega, layers } => {
                if omega == 0 || omega > 63 {
                    return Err(BuildError::Invalid(format!("omega must lie in 1..=63, got {omega}")));
                }
                let bits = rng.gen_range(1..(1u64 << omega));
                let pattern = GadgetSpec::pattern_from_bits(bits, omega);
                build_lb_gadget(&GadgetSpec::new(pattern, layers, GadgetEncoding::FullPattern))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params())
    }
}

/// Random string over `ACGT`.
pub fn random_dna(rng: &mut impl Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
}

/// Substitutes each symbol with probability `rate`, keeping the length.
fn mutate(rng: &mut impl Rng, s: &[u8], rate: f64) -> Vec<u8> {
    s.iter().map(|&c| if rng.gen_bool(rate) { b"ACGT"[rng.gen_range(0..4)] } else { c }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub params: String,
    pub seed: u64,
    #[serde(rename = "T")]
    pub t: u32,
    pub omega: usize,
    pub peak_live_words: usize,
    pub depth: u32,
    pub forward_passes: u64,
    pub wall_time: f64,
    pub error: String,
}

/// Builds one instance and traces to its largest sink.
pub fn run_row(family: &Family, seed: u64, config: &TracebackConfig) -> SweepRow {
    let mut row = SweepRow {
        family: family.name().to_string(),
        params: family.params(),
        seed,
        t: 0,
        omega: 0,
        peak_live_words: 0,
        depth: 0,
        forward_passes: 0,
        wall_time: 0.0,
        error: String::new(),
    };
    let dag = match family.build(seed) {
        Ok(d) => d,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    row.t = dag.vertex_count();
    row.omega = dag.frontier_width();
    let sink = *dag.sinks().last().unwrap();
    let start = Instant::now();
    match traceback(&dag, sink as u64, config) {
        Ok((_, m)) => {
            row.peak_live_words = m.peak_live_words;
            row.depth = m.max_recursion_depth;
            row.forward_passes = m.forward_pass_count;
        }
        Err(e) => row.error = e.to_string(),
    }
    row.wall_time = start.elapsed().as_secs_f64();
    row
}
