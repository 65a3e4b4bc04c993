use super::BuildError;
use crate::dag::{DagBuilder, DpDag, VertexId, DEFAULT_DELTA_MAX};
use crate::semiring::{SemiringKind, Value};

/// Weight added to edges leaving an inactive entry vertex.
pub const INACTIVE_PENALTY: i64 = -1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GadgetEncoding {
    /// Straight disjoint lanes; the witness reveals only the first active lane.
    #[default]
    FirstActive,
    /// Each lane is a ladder of two-vertex rungs whose edges reward the
    /// pattern bits, so the witness spells out the whole pattern.
    FullPattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub omega: u32,
    /// Active entry vertices, one flag per lane.
    pub pattern: Vec<bool>,
    /// Layers after the entry layer. `FullPattern` uses at least `omega`.
    pub layer_count: u32,
    pub encoding: GadgetEncoding,
}

impl GadgetSpec {
    pub fn new(pattern: Vec<bool>, layer_count: u32, encoding: GadgetEncoding) -> Self {
        GadgetSpec { omega: pattern.len() as u32, pattern, layer_count, encoding }
    }

    /// Parses a pattern like `0101`.
    pub fn parse_pattern(s: &str) -> Result<Vec<bool>, BuildError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BuildError::Invalid(format!("pattern digit `{other}` is not 0 or 1"))),
            })
            .collect()
    }

    /// Pattern of lane flags from the low `omega` bits of `bits`, lane 1 first.
    pub fn pattern_from_bits(bits: u64, omega: u32) -> Vec<bool> {
        (0..omega).map(|k| bits >> k & 1 == 1).collect()
    }

    fn layers(&self) -> u32 {
        match self.encoding {
            GadgetEncoding::FirstActive => self.layer_count,
            GadgetEncoding::FullPattern => self.layer_count.max(self.omega),
        }
    }
}

/// Vertex numbering of a gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetLayout {
    omega: u32,
    layers: u32,
    rung: u32,
}

impl GadgetLayout {
    pub fn of(spec: &GadgetSpec) -> Self {
        let rung = match spec.encoding {
            GadgetEncoding::FirstActive => 1,
            GadgetEncoding::FullPattern => 2,
        };
        GadgetLayout { omega: spec.omega, layers: spec.layers(), rung }
    }

    pub fn source(&self) -> VertexId {
        1
    }

    /// Entry vertex of lane `lane` (1-based).
    pub fn entry(&self, lane: u32) -> VertexId {
        1 + lane
    }

    /// `side`-th vertex of lane `lane` in layer `layer` (both 1-based).
    pub fn vertex(&self, layer: u32, lane: u32, side: u32) -> VertexId {
        1 + self.omega + (layer - 1) * self.omega * self.rung + (lane - 1) * self.rung + side + 1
    }

    pub fn sink(&self) -> VertexId {
        self.vertex_count()
    }

    pub fn vertex_count(&self) -> u32 {
        2 + self.omega + self.layers * self.omega * self.rung
    }

    /// Lane whose entry vertex lies on `path`, if exactly one does.
    pub fn lane_of(&self, path: &[VertexId]) -> Option<u32> {
        let mut lanes = path.iter().filter(|&&v| v >= 2 && v <= 1 + self.omega);
        let first = lanes.next()?;
        lanes.next().is_none().then(|| first - 1)
    }
}

/// Lower-bound gadget: a source fans out to `omega` entry vertices, each
/// entry starts a lane of `layer_count` layers, and all lanes meet at the
/// sink. Leaving an inactive entry costs [`INACTIVE_PENALTY`]; lane `ℓ` earns
/// `omega - ℓ + 1` so the first active lane wins.
pub fn build_lb_gadget(spec: &GadgetSpec) -> Result<DpDag, BuildError> {
    if spec.omega == 0 || spec.pattern.len() != spec.omega as usize {
        return Err(BuildError::Invalid(format!(
            "pattern length {} must equal omega {} >= 1",
            spec.pattern.len(),
            spec.omega
        )));
    }
    if !spec.pattern.iter().any(|&b| b) {
        return Err(BuildError::Invalid("pattern needs at least one active lane".into()));
    }
    let w = spec.omega;
    let layout = GadgetLayout::of(spec);
    let layers = spec.layers();
    let mut b = DagBuilder::new(layout.vertex_count(), SemiringKind::MaxPlus)
        .delta_max(DEFAULT_DELTA_MAX.max((w * layout.rung) as usize));
    b.add_source(layout.source(), Value::ONE).add_sink(layout.sink());
    for lane in 1..=w {
        let entry = layout.entry(lane);
        b.add_edge(layout.source(), entry, Value::ONE);
        let active = spec.pattern[(lane - 1) as usize];
        let leave = if active { 0 } else { INACTIVE_PENALTY } + (w - lane + 1) as i64;
        if layers == 0 {
            b.add_edge(entry, layout.sink(), Value::new(leave));
            continue;
        }
        match spec.encoding {
            GadgetEncoding::FirstActive => {
                b.add_edge(entry, layout.vertex(1, lane, 0), Value::new(leave));
                for layer in 1..layers {
                    b.add_edge(layout.vertex(layer, lane, 0), layout.vertex(layer + 1, lane, 0), Value::ONE);
                }
                b.add_edge(layout.vertex(layers, lane, 0), layout.sink(), Value::ONE);
            }
            GadgetEncoding::FullPattern => {
                // Rung k rewards side 0 when bit k is set, side 1 otherwise.
                let reward = |layer: u32, side: u32| -> i64 {
                    let k = (layer - 1) as usize;
                    match spec.pattern.get(k) {
                        Some(&bit) if bit == (side == 0) => 1,
                        _ => 0,
                    }
                };
                for side in 0..2 {
                    b.add_edge(entry, layout.vertex(1, lane, side), Value::new(leave + reward(1, side)));
                }
                for layer in 1..layers {
                    for from in 0..2 {
                        for to in 0..2 {
                            b.add_edge(
                                layout.vertex(layer, lane, from),
                                layout.vertex(layer + 1, lane, to),
                                Value::new(reward(layer + 1, to)),
                            );
                        }
                    }
                }
                for side in 0..2 {
                    b.add_edge(layout.vertex(layers, lane, side), layout.sink(), Value::ONE);
                }
            }
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_solve, oracle_traceback};

    fn witness(spec: &GadgetSpec) -> Vec<VertexId> {
        let d = build_lb_gadget(spec).unwrap();
        oracle_traceback(&oracle_solve(&d), d.vertex_count()).unwrap().vertices
    }

    #[test]
    fn single_lane() {
        let spec = GadgetSpec::new(vec![true], 2, GadgetEncoding::FirstActive);
        assert_eq!(witness(&spec), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn middle_lane_wins() {
        for enc in [GadgetEncoding::FirstActive, GadgetEncoding::FullPattern] {
            let spec = GadgetSpec::new(vec![false, true, false], 3, enc);
            let layout = GadgetLayout::of(&spec);
            assert_eq!(layout.lane_of(&witness(&spec)), Some(2));
        }
    }

    #[test]
    fn all_active_uses_lane_one() {
        let spec = GadgetSpec::new(vec![true; 3], 2, GadgetEncoding::FirstActive);
        assert_eq!(GadgetLayout::of(&spec).lane_of(&witness(&spec)), Some(1));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(build_lb_gadget(&GadgetSpec::new(vec![false, false], 1, GadgetEncoding::FirstActive)).is_err());
        assert!(build_lb_gadget(&GadgetSpec::new(vec![], 1, GadgetEncoding::FirstActive)).is_err());
        assert_eq!(GadgetSpec::parse_pattern("0101").unwrap(), vec![false, true, false, true]);
        assert!(GadgetSpec::parse_pattern("012").is_err());
    }

    #[test]
    fn zero_layers() {
        let spec = GadgetSpec::new(vec![false, true], 0, GadgetEncoding::FirstActive);
        assert_eq!(witness(&spec), vec![1, 3, 4]);
    }
}
