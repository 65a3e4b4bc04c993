//! Divide-and-conquer reconstruction of the canonical witness path.
//!
//! Each subproblem is an interval `[lo, hi]` of the topological order, a
//! boundary (either the source set or a single vertex before `lo`), a target
//! inside the interval and the target's value relative to the boundary. The
//! engine splits at the midpoint, finds the vertex where the canonical path
//! last sits at or before the midpoint, and solves both halves. Only the
//! branching ancestors of the current node hold state, so working memory stays
//! proportional to the frontier width plus a logarithmic stack.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dag::{DpDag, Interval, VertexId};
use crate::error::{TraceError, Violation};
use crate::forward::{Boundary, FrontierBuffer, PassRunner, PassStats, Seeds};
use crate::semiring::{improves, Value};

/// Words charged for each suspended ancestor frame: cut, interval end,
/// target and the right-half value.
pub const FRAME_WORDS: usize = 4;
/// Words held per crossing candidate while a node is active: index, f, g.
pub const CANDIDATE_WORDS: usize = 3;
/// Space bound coefficients: `C1·ω + C2·(⌈log₂T⌉+1)·FRAME_WORDS + B_base + C3`.
pub const SPACE_C1: usize = 5;
pub const SPACE_C2: usize = 2;
pub const SPACE_C3: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssertionLevel {
    Off,
    /// Decomposition identity, crossing optimality and base-case values.
    #[default]
    Decomposition,
    /// Everything above plus per-step buffer bounds, depth and space bounds,
    /// and validity of the returned path.
    Full,
}

impl FromStr for AssertionLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(AssertionLevel::Off),
            "decomposition" => Ok(AssertionLevel::Decomposition),
            "full" => Ok(AssertionLevel::Full),
            other => Err(format!("unknown assertion level `{other}` (expected off, decomposition or full)")),
        }
    }
}

impl fmt::Display for AssertionLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssertionLevel::Off => "off",
            AssertionLevel::Decomposition => "decomposition",
            AssertionLevel::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TracebackConfig {
    /// Intervals at most this long are solved directly. `None` picks
    /// [`default_base_case_size`]. Values below 1 are treated as 1.
    pub base_case_threshold: Option<u32>,
    pub assertion_level: AssertionLevel,
    /// When false, live-word accounting is skipped and reported as zero.
    pub metrics_enabled: bool,
}

impl Default for TracebackConfig {
    fn default() -> Self {
        TracebackConfig { base_case_threshold: None, assertion_level: AssertionLevel::default(), metrics_enabled: true }
    }
}

impl TracebackConfig {
    pub fn with_base_case(mut self, b: u32) -> Self {
        self.base_case_threshold = Some(b);
        self
    }

    pub fn with_assertions(mut self, level: AssertionLevel) -> Self {
        self.assertion_level = level;
        self
    }

    pub fn base_case_for(&self, vertex_count: u32) -> u32 {
        self.base_case_threshold.unwrap_or_else(|| default_base_case_size(vertex_count)).max(1)
    }
}

/// `max(1, ⌈(log₂ T)²⌉)`.
pub fn default_base_case_size(vertex_count: u32) -> u32 {
    let l = (vertex_count.max(1) as f64).log2();
    ((l * l).ceil() as u32).max(1)
}

/// `⌈log₂ T⌉`, zero for `T <= 1`.
pub fn ceil_log2(t: u32) -> u32 {
    if t <= 1 {
        0
    } else {
        32 - (t - 1).leading_zeros()
    }
}

/// Deepest recursion level allowed for `T` vertices.
pub fn depth_bound(vertex_count: u32) -> u32 {
    ceil_log2(vertex_count) + 2
}

/// Peak live words allowed for a run.
pub fn space_bound(omega: usize, vertex_count: u32, base_case: u32) -> usize {
    SPACE_C1 * omega + SPACE_C2 * (ceil_log2(vertex_count) as usize + 1) * FRAME_WORDS + base_case as usize + SPACE_C3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPath {
    pub vertices: Vec<VertexId>,
    pub value: Value,
}

impl WitnessPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Folds the path's edge weights starting from its source's initial value.
    /// `None` if the path is not a source-rooted path of `dag`.
    pub fn fold_value(&self, dag: &DpDag) -> Option<Value> {
        let first = *self.vertices.first()?;
        let mut acc = dag.source_value(first)?;
        for w in self.vertices.windows(2) {
            acc = acc.extend(dag.weight(w[0], w[1])?);
        }
        Some(acc)
    }

    /// Checks edges, monotonicity and endpoints against `dag` and `sink`.
    pub fn validate(&self, dag: &DpDag, sink: VertexId) -> Result<(), String> {
        let Some(&first) = self.vertices.first() else {
            return Err("empty path".into());
        };
        if !dag.is_source(first) {
            return Err(format!("first vertex {first} is not a source"));
        }
        if self.vertices.last() != Some(&sink) {
            return Err(format!("path does not end at sink {sink}"));
        }
        for w in self.vertices.windows(2) {
            if w[0] >= w[1] {
                return Err(format!("indices not increasing at {} -> {}", w[0], w[1]));
            }
            if dag.weight(w[0], w[1]).is_none() {
                return Err(format!("missing edge {} -> {}", w[0], w[1]));
            }
        }
        match self.fold_value(dag) {
            Some(v) if v == self.value => Ok(()),
            other => Err(format!("path folds to {other:?}, reported {}", self.value)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetrics {
    /// Most words simultaneously held by pass buffers, base-case tables,
    /// boundary maps, crossing candidates and suspended frames.
    pub peak_live_words: usize,
    /// Depth of the recursion tree, counting halving steps.
    pub max_recursion_depth: u32,
    pub forward_pass_count: u64,
    pub vertex_visit_count: u64,
    /// Most simultaneously suspended frames.
    pub max_stack_frames: u32,
    /// Extra labeled passes run to break ties among crossing candidates.
    pub tie_resolution_passes: u64,
    /// Size of the source set; the root boundary refers to it implicitly and
    /// it is not included in `peak_live_words`.
    pub root_boundary_words: usize,
    /// Nodes that split at the midpoint and checked the decomposition identity.
    pub branch_nodes: u64,
    /// Largest frontier buffer of any single pass.
    pub max_buffer_entries: usize,
    pub omega: usize,
    pub base_case_threshold: u32,
}

/// Receives path vertices in order.
pub trait PathSink {
    fn push(&mut self, v: VertexId);
}

impl PathSink for Vec<VertexId> {
    fn push(&mut self, v: VertexId) {
        Vec::push(self, v)
    }
}

/// Counts vertices without storing them.
#[derive(Clone, Copy, Debug, Default)]
pub struct CountingSink(pub usize);

impl PathSink for CountingSink {
    fn push(&mut self, _v: VertexId) {
        self.0 += 1;
    }
}

/// Reconstructs the canonical optimal path ending at `sink`.
pub fn traceback(dag: &DpDag, sink: u64, config: &TracebackConfig) -> Result<(WitnessPath, RunMetrics), TraceError> {
    let mut vertices = Vec::new();
    let (value, metrics) = traceback_into(dag, sink, config, &mut vertices)?;
    let path = WitnessPath { vertices, value };
    if config.assertion_level == AssertionLevel::Full {
        let s = sink as VertexId;
        path.validate(dag, s).map_err(Violation::Path)?;
        let (global, _) = PassRunner::new(dag, None).global(s)?;
        if global != path.value {
            return Err(Violation::Path(format!("value {} differs from global value {global}", path.value)).into());
        }
    }
    Ok((path, metrics))
}

/// Streaming variant of [`traceback`]: vertices go to `out` as segments
/// complete. Returns the path value.
pub fn traceback_into(
    dag: &DpDag,
    sink: u64,
    config: &TracebackConfig,
    out: &mut dyn PathSink,
) -> Result<(Value, RunMetrics), TraceError> {
    let s = dag.check_vertex(sink)?;
    if !dag.is_sink(s) {
        return Err(TraceError::NotASink { vertex: s });
    }
    let t = dag.vertex_count();
    let level = config.assertion_level;
    let limit = (level == AssertionLevel::Full).then(|| dag.frontier_width() + 1);
    let mut engine = Engine {
        dag,
        runner: PassRunner::new(dag, limit),
        base: config.base_case_for(t),
        level,
        track: config.metrics_enabled,
        out,
        live: 0,
        peak: 0,
        frames: 0,
        max_frames: 0,
        max_depth: 0,
        ties: 0,
        branches: 0,
    };
    let (value, _) = engine.runner.global(s)?;
    if value.is_bottom() {
        return Err(TraceError::NoWitness { sink: s });
    }
    let root = Boundary::Sources;
    engine.charge(root.words());
    engine.solve(1, t, &root, s, value, 0)?;

    let metrics = RunMetrics {
        peak_live_words: engine.peak,
        max_recursion_depth: engine.max_depth,
        forward_pass_count: engine.runner.passes,
        vertex_visit_count: engine.runner.visits,
        max_stack_frames: engine.max_frames,
        tie_resolution_passes: engine.ties,
        root_boundary_words: dag.sources().len(),
        branch_nodes: engine.branches,
        max_buffer_entries: engine.runner.peak_entries,
        omega: dag.frontier_width(),
        base_case_threshold: engine.base,
    };
    if level == AssertionLevel::Full {
        let bound = depth_bound(t);
        if metrics.max_recursion_depth > bound {
            return Err(Violation::Depth { depth: metrics.max_recursion_depth, bound }.into());
        }
        let bound = space_bound(metrics.omega, t, engine.base);
        if engine.track && metrics.peak_live_words > bound {
            return Err(Violation::Space { words: metrics.peak_live_words, bound }.into());
        }
    }
    Ok((value, metrics))
}

/// Smallest-index maximizer of `f(v) ⊗ g(v)` with its `f` and `g`.
pub fn select_midpoint(
    candidates: &[VertexId],
    f: &[Value],
    g: &[Value],
) -> Result<(VertexId, Value, Value), TraceError> {
    if candidates.is_empty() || f.len() != candidates.len() || g.len() != candidates.len() {
        return Err(TraceError::Precondition("candidates, f and g must be non-empty and aligned".into()));
    }
    let mut best: Option<usize> = None;
    let mut best_val = Value::BOTTOM;
    for i in 0..candidates.len() {
        let c = f[i].extend(g[i]);
        if improves(c, best_val) {
            best = Some(i);
            best_val = c;
        }
    }
    best.map(|i| (candidates[i], f[i], g[i])).ok_or(TraceError::NoFeasibleCrossing)
}

/// Direct traceback inside `interval` from `target` back to the boundary.
///
/// The returned segment starts with the boundary vertex when the backtrack
/// reaches one, or with a source when the boundary is the source set.
pub fn base_case(
    dag: &DpDag,
    interval: Interval,
    boundary: &Boundary,
    target: VertexId,
    target_value: Value,
) -> Result<Vec<VertexId>, TraceError> {
    if !interval.contains(target) || interval.hi > dag.vertex_count() {
        return Err(TraceError::Precondition(format!("target {target} outside {interval}")));
    }
    let mut runner = PassRunner::new(dag, None);
    let mut seg = Vec::new();
    let (start, _) = direct(&mut runner, interval.lo, boundary, target, target_value, &mut seg)?;
    if let Some(b) = start {
        seg.insert(0, b);
    }
    Ok(seg)
}

/// Shared base-case routine. Emits the segment after the boundary vertex to
/// `out` and returns that boundary vertex (`None` under the source boundary)
/// with the pass statistics.
fn direct(
    runner: &mut PassRunner<'_>,
    lo: VertexId,
    boundary: &Boundary,
    target: VertexId,
    val: Value,
    out: &mut dyn PathSink,
) -> Result<(Option<VertexId>, PassStats), TraceError> {
    let dag = runner.dag;
    let len = (target - lo + 1) as usize;
    // 0 marks "no predecessor"; vertex ids start at 1.
    let mut pred = vec![0 as VertexId; len];
    let mut found = Value::BOTTOM;
    let seeds: Vec<(VertexId, Value, ())>;
    let seeds = match boundary {
        Boundary::Sources => Seeds { root: Some((Value::ONE, ())), vertices: &[][..] },
        Boundary::Vertices(list) => {
            seeds = list.iter().map(|&(v, x)| (v, x, ())).collect();
            Seeds { root: None, vertices: &seeds[..] }
        }
    };
    let stats = runner.sweep(lo, target, seeds, |s| {
        pred[(s.vertex - lo) as usize] = s.pred.unwrap_or(0);
        if s.vertex == target {
            found = s.value;
        }
        true
    })?;
    if found != val {
        return Err(Violation::BaseCaseValue { lo, hi: target, target, found, expected: val }.into());
    }

    // Reverse the predecessor chain in place, then walk it forward.
    let mut cur = target;
    let mut next = 0;
    let start = loop {
        let p = pred[(cur - lo) as usize];
        pred[(cur - lo) as usize] = next;
        next = cur;
        if p == 0 {
            match boundary {
                Boundary::Sources if dag.is_source(cur) => break None,
                _ if boundary.contains(dag, cur) => {
                    // The boundary vertex lies inside the interval.
                    next = pred[(cur - lo) as usize];
                    break Some(cur);
                }
                _ => return Err(Violation::BaseCaseBoundary { lo, hi: target, target }.into()),
            }
        }
        if p < lo {
            if !boundary.contains(dag, p) {
                return Err(Violation::BaseCaseBoundary { lo, hi: target, target }.into());
            }
            break Some(p);
        }
        cur = p;
    };
    let mut v = next;
    while v != 0 {
        out.push(v);
        v = pred[(v - lo) as usize];
    }
    Ok((start, stats))
}

struct Engine<'d, 'o> {
    dag: &'d DpDag,
    runner: PassRunner<'d>,
    base: u32,
    level: AssertionLevel,
    track: bool,
    out: &'o mut dyn PathSink,
    live: usize,
    peak: usize,
    frames: u32,
    max_frames: u32,
    max_depth: u32,
    ties: u64,
    branches: u64,
}

/// Crossing candidate: the virtual root (0), the boundary vertex, or a
/// middle-frontier vertex.
#[derive(Clone, Copy, Debug)]
struct Candidate {
    vertex: VertexId,
    f: Value,
    g: Value,
}

impl Engine<'_, '_> {
    fn charge(&mut self, words: usize) {
        if self.track {
            self.live += words;
            self.peak = self.peak.max(self.live);
        }
    }

    fn release(&mut self, words: usize) {
        if self.track {
            self.live -= words;
        }
    }

    fn observe(&mut self, transient: usize) {
        if self.track {
            self.peak = self.peak.max(self.live + transient);
        }
    }

    fn checks(&self) -> bool {
        self.level != AssertionLevel::Off
    }

    /// Emits the canonical segment after the boundary up to `target`.
    fn solve(
        &mut self,
        mut lo: VertexId,
        mut hi: VertexId,
        parent_boundary: &Boundary,
        target: VertexId,
        mut val: Value,
        mut depth: u32,
    ) -> Result<(), TraceError> {
        let dag = self.dag;
        // Right halves own a fresh singleton boundary; left halves borrow.
        let mut own: Option<Boundary> = None;
        loop {
            self.max_depth = self.max_depth.max(depth);
            let boundary = own.as_ref().unwrap_or(parent_boundary);
            if hi - lo < self.base {
                let len = (target - lo + 1) as usize;
                let (_, stats) = direct(&mut self.runner, lo, boundary, target, val, &mut *self.out)?;
                self.observe(len + stats.peak_entries);
                break;
            }
            let m = ((lo as u64 + hi as u64) / 2) as VertexId;
            if target <= m {
                hi = m;
                depth += 1;
                continue;
            }

            self.branches += 1;
            let mut cands: Vec<Candidate> = Vec::new();
            match boundary {
                Boundary::Sources => {
                    if dag.max_successor_within(0, target) > m {
                        cands.push(Candidate { vertex: 0, f: Value::ONE, g: Value::BOTTOM });
                    }
                }
                Boundary::Vertices(list) => {
                    for &(b, x) in list {
                        if b < lo && dag.max_successor_within(b, target) > m {
                            cands.push(Candidate { vertex: b, f: x, g: Value::BOTTOM });
                        }
                    }
                }
            }
            let outer = cands.len();
            let frontier: Vec<VertexId> = (lo..=m).filter(|&v| dag.max_successor_within(v, target) > m).collect();
            self.charge(CANDIDATE_WORDS * (outer + frontier.len()));
            let held = CANDIDATE_WORDS * (outer + frontier.len());

            if !frontier.is_empty() {
                let (fs, stats) = self.runner.prefix(lo, m, boundary, &frontier)?;
                self.observe(stats.peak_entries);
                cands.extend(frontier.iter().zip(fs).map(|(&v, f)| Candidate { vertex: v, f, g: Value::BOTTOM }));
            }
            let mut best = Value::BOTTOM;
            for c in cands.iter_mut() {
                if c.f.is_bottom() {
                    continue;
                }
                let (g, stats) = self.runner.suffix(c.vertex, m + 1, target)?;
                self.observe(stats.peak_entries);
                c.g = g;
                best = best.combine(c.f.extend(g));
            }
            if self.checks() && best != val {
                return Err(Violation::Decomposition { lo, hi, found: best, expected: val }.into());
            }
            let verts: Vec<VertexId> = cands.iter().map(|c| c.vertex).collect();
            let fv: Vec<Value> = cands.iter().map(|c| c.f).collect();
            let gv: Vec<Value> = cands.iter().map(|c| c.g).collect();
            let (mut star, mut f_star, mut g_star) = select_midpoint(&verts, &fv, &gv)?;
            let ties = cands.iter().filter(|c| c.f.extend(c.g) == best).count();
            if ties > 1 {
                let chosen = self.canonical_crossing(m, target, &cands)?;
                let c = cands.iter().find(|c| c.vertex == chosen).copied();
                match c {
                    Some(c) if c.f.extend(c.g) == best => {
                        (star, f_star, g_star) = (c.vertex, c.f, c.g);
                    }
                    _ => return Err(Violation::Crossing { lo, hi, vertex: chosen }.into()),
                }
            }
            self.release(held);

            if star >= lo {
                self.charge(FRAME_WORDS);
                self.frames += 1;
                self.max_frames = self.max_frames.max(self.frames);
                self.solve(lo, m, boundary, star, f_star, depth + 1)?;
                self.frames -= 1;
                self.release(FRAME_WORDS);
            }

            let next = if star == 0 { Boundary::Sources } else { Boundary::single(star, Value::ONE) };
            if let Some(old) = own.take() {
                self.release(old.words());
            }
            self.charge(next.words());
            own = Some(next);
            lo = m + 1;
            val = g_star;
            depth += 1;
        }
        if let Some(old) = own {
            self.release(old.words());
        }
        Ok(())
    }

    /// Runs a labeled pass over `(m, target]` seeded with the candidates and
    /// returns the candidate from which the canonical path crosses the cut.
    fn canonical_crossing(
        &mut self,
        m: VertexId,
        target: VertexId,
        cands: &[Candidate],
    ) -> Result<VertexId, TraceError> {
        self.ties += 1;
        let mut root = None;
        let mut seeds: Vec<(VertexId, Value, VertexId)> = Vec::with_capacity(cands.len());
        for c in cands {
            if c.vertex == 0 {
                root = Some((c.f, 0));
            } else {
                seeds.push((c.vertex, c.f, c.vertex));
            }
        }
        let mut label = None;
        let stats = self.runner.sweep(m + 1, target, Seeds { root, vertices: &seeds }, |s| {
            if s.vertex == target {
                label = Some(s.label);
            }
            true
        })?;
        self.observe(stats.peak_entries * FrontierBuffer::<VertexId>::words_per_entry());
        label.ok_or_else(|| TraceError::Precondition("labeled pass did not reach target".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::DagBuilder;
    use crate::semiring::SemiringKind;

    fn unit_chain(n: u32) -> DpDag {
        let mut b = DagBuilder::new(n, SemiringKind::MaxPlus);
        b.add_source(1, Value::ONE).add_sink(n);
        for v in 1..n {
            b.add_edge(v, v + 1, Value::new(1));
        }
        b.build().unwrap()
    }

    fn full() -> TracebackConfig {
        TracebackConfig::default().with_assertions(AssertionLevel::Full)
    }

    #[test]
    fn chain_path_is_the_whole_chain() {
        for n in [1u32, 2, 3, 7, 64, 1000] {
            let dag = unit_chain(n);
            for b in [1, 2, 5] {
                let (p, m) = traceback(&dag, n as u64, &full().with_base_case(b)).unwrap();
                assert_eq!(p.vertices, (1..=n).collect::<Vec<_>>());
                assert_eq!(p.value, Value::new(n as i64 - 1));
                assert!(m.max_recursion_depth <= depth_bound(n));
            }
        }
    }

    #[test]
    fn select_midpoint_examples() {
        let v = Value::new;
        assert_eq!(select_midpoint(&[3, 5], &[v(3), v(4)], &[v(4), v(3)]).unwrap().0, 3);
        assert_eq!(select_midpoint(&[3, 5], &[v(1), v(4)], &[v(1), v(5)]).unwrap().0, 5);
        assert_eq!(select_midpoint(&[4], &[Value::BOTTOM], &[v(1)]).unwrap_err(), TraceError::NoFeasibleCrossing);
    }

    #[test]
    fn base_case_examples() {
        let dag = unit_chain(5);
        let seg =
            base_case(&dag, Interval::new(3, 3).unwrap(), &Boundary::single(2, Value::ONE), 3, Value::new(1)).unwrap();
        assert_eq!(seg, vec![2, 3]);
        let seg = base_case(&dag, Interval::new(1, 5).unwrap(), &Boundary::Sources, 5, Value::new(4)).unwrap();
        assert_eq!(seg, vec![1, 2, 3, 4, 5]);
        assert!(matches!(
            base_case(&dag, Interval::new(1, 5).unwrap(), &Boundary::Sources, 5, Value::new(3)),
            Err(TraceError::Invariant(Violation::BaseCaseValue { .. }))
        ));
    }

    #[test]
    fn base_case_ties_prefer_smaller_edge() {
        // 1 -> {2,3} -> 4 with equal values.
        let dag = DpDag::builder(4, SemiringKind::MaxPlus)
            .source(1, Value::ONE)
            .sink(4)
            .edge(1, 2, Value::new(1))
            .edge(1, 3, Value::new(1))
            .edge(2, 4, Value::new(1))
            .edge(3, 4, Value::new(1))
            .build()
            .unwrap();
        let seg = base_case(&dag, Interval::new(1, 4).unwrap(), &Boundary::Sources, 4, Value::new(2)).unwrap();
        assert_eq!(seg, vec![1, 2, 4]);
        let (p, _) = traceback(&dag, 4, &full().with_base_case(1)).unwrap();
        assert_eq!(p.vertices, vec![1, 2, 4]);
    }

    #[test]
    fn unreachable_and_non_sink_errors() {
        let dag = DpDag::builder(3, SemiringKind::MaxPlus)
            .source(1, Value::ONE)
            .sink(2)
            .sink(3)
            .edge(1, 2, Value::ONE)
            .build()
            .unwrap();
        assert_eq!(traceback(&dag, 3, &full()).unwrap_err(), TraceError::NoWitness { sink: 3 });
        assert_eq!(traceback(&dag, 1, &full()).unwrap_err(), TraceError::NotASink { vertex: 1 });
        assert!(matches!(traceback(&dag, 9, &full()).unwrap_err(), TraceError::Dag(_)));
    }

    #[test]
    fn late_source_path_skips_left_half() {
        // Sources 1 and 5; the best path to 8 starts at 5.
        let mut b = DagBuilder::new(8, SemiringKind::MaxPlus);
        b.add_source(1, Value::ONE).add_source(5, Value::new(100)).add_sink(8);
        for v in 1..4 {
            b.add_edge(v, v + 1, Value::new(1));
        }
        b.add_edge(4, 8, Value::new(1)).add_edge(5, 6, Value::ONE).add_edge(6, 7, Value::ONE).add_edge(
            7,
            8,
            Value::ONE,
        );
        let dag = b.build().unwrap();
        for base in [1, 2, 3, 8] {
            let (p, _) = traceback(&dag, 8, &full().with_base_case(base)).unwrap();
            assert_eq!(p.vertices, vec![5, 6, 7, 8]);
            assert_eq!(p.value, Value::new(100));
        }
    }

    #[test]
    fn counting_sink_streams() {
        let dag = unit_chain(100);
        let mut sink = CountingSink::default();
        let (v, _) = traceback_into(&dag, 100, &TracebackConfig::default(), &mut sink).unwrap();
        assert_eq!(sink.0, 100);
        assert_eq!(v, Value::new(99));
    }

    #[test]
    fn bounds_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1 << 16), 16);
        assert_eq!(default_base_case_size(1), 1);
        assert_eq!(default_base_case_size(1 << 16), 256);
        assert_eq!("full".parse::<AssertionLevel>().unwrap(), AssertionLevel::Full);
    }
}
