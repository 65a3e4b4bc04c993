//! Immutable DP DAGs in a fixed topological order, plus frontier analysis.
//!
//! Vertices are `1..=T` and are identified with their topological index, so
//! every edge `(u, v)` has `u < v`. Predecessor lists are stored sorted by `u`,
//! which makes iteration order equal to the canonical edge order (lexicographic
//! on `(u, v)`; all edges into one vertex share `v`).

use std::fmt;

use thiserror::Error;

use crate::semiring::{SemiringKind, Value};

/// 1-based topological index of a vertex. `0` never names a real vertex.
pub type VertexId = u32;

/// In-degree cap used when a caller does not pick one.
pub const DEFAULT_DELTA_MAX: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DagError {
    #[error("a DAG needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} is outside 1..={count}")]
    VertexOutOfRange { vertex: u64, count: u32 },
    #[error("cut position {ell} is outside 0..={count}")]
    CutOutOfRange { ell: u64, count: u32 },
    #[error("edge ({from}, {to}) does not respect the topological order")]
    BackwardEdge { from: VertexId, to: VertexId },
    #[error("edge ({from}, {to}) appears more than once")]
    DuplicateEdge { from: VertexId, to: VertexId },
    #[error("source {vertex} has an incoming edge")]
    SourceHasPredecessor { vertex: VertexId },
    #[error("vertex {vertex} is listed as a source more than once")]
    DuplicateSource { vertex: VertexId },
    #[error("vertex {vertex} is listed as a sink more than once")]
    DuplicateSink { vertex: VertexId },
    #[error("the DAG has no sources")]
    NoSources,
    #[error("the DAG has no sinks")]
    NoSinks,
    #[error("vertex {vertex} has in-degree {degree}, above the cap of {cap}")]
    InDegreeExceeded { vertex: VertexId, degree: usize, cap: usize },
    #[error("edge ({from}, {to}) has weight {weight}, not admissible in the {kind} semiring")]
    InadmissibleWeight { from: VertexId, to: VertexId, weight: Value, kind: SemiringKind },
    #[error("source {vertex} has initial value {value}, not admissible in the {kind} semiring")]
    InadmissibleInit { vertex: VertexId, value: Value, kind: SemiringKind },
    #[error("invalid interval [{lo}, {hi}]")]
    BadInterval { lo: VertexId, hi: VertexId },
}

/// A weighted edge `(from, to)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: Value,
}

/// Accumulates vertices, sources, sinks and edges; `build` validates.
#[derive(Clone, Debug)]
pub struct DagBuilder {
    vertex_count: u32,
    kind: SemiringKind,
    delta_max: usize,
    sources: Vec<(VertexId, Value)>,
    sinks: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl DagBuilder {
    pub fn new(vertex_count: u32, kind: SemiringKind) -> Self {
        DagBuilder {
            vertex_count,
            kind,
            delta_max: DEFAULT_DELTA_MAX,
            sources: Vec::new(),
            sinks: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn delta_max(mut self, cap: usize) -> Self {
        self.delta_max = cap;
        self
    }

    pub fn set_delta_max(&mut self, cap: usize) -> &mut Self {
        self.delta_max = cap;
        self
    }

    pub fn add_source(&mut self, vertex: VertexId, init: Value) -> &mut Self {
        self.sources.push((vertex, init));
        self
    }

    pub fn add_sink(&mut self, vertex: VertexId) -> &mut Self {
        self.sinks.push(vertex);
        self
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId, weight: Value) -> &mut Self {
        self.edges.push(Edge { from, to, weight });
        self
    }

    pub fn source(mut self, vertex: VertexId, init: Value) -> Self {
        self.add_source(vertex, init);
        self
    }

    pub fn sink(mut self, vertex: VertexId) -> Self {
        self.add_sink(vertex);
        self
    }

    pub fn edge(mut self, from: VertexId, to: VertexId, weight: Value) -> Self {
        self.add_edge(from, to, weight);
        self
    }

    pub fn build(self) -> Result<DpDag, DagError> {
        DpDag::from_parts(self.vertex_count, self.kind, self.delta_max, self.sources, self.sinks, self.edges)
    }
}

/// A computational DP DAG. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct DpDag {
    n: u32,
    kind: SemiringKind,
    delta_max: usize,
    in_offsets: Vec<u32>,
    in_src: Vec<VertexId>,
    in_weight: Vec<Value>,
    out_offsets: Vec<u32>,
    out_dst: Vec<VertexId>,
    out_weight: Vec<Value>,
    // Slot 0 holds the largest source index.
    max_successor: Vec<VertexId>,
    source_init: Vec<Option<Value>>,
    sources: Vec<VertexId>,
    sinks: Vec<VertexId>,
    omega: usize,
}

impl fmt::Debug for DpDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DpDag")
            .field("vertices", &self.n)
            .field("edges", &self.out_dst.len())
            .field("semiring", &self.kind)
            .field("sources", &self.sources)
            .field("sinks", &self.sinks)
            .field("omega", &self.omega)
            .finish()
    }
}

impl DpDag {
    pub fn builder(vertex_count: u32, kind: SemiringKind) -> DagBuilder {
        DagBuilder::new(vertex_count, kind)
    }

    /// Validates and indexes a DAG.
    pub fn from_parts(
        vertex_count: u32,
        kind: SemiringKind,
        delta_max: usize,
        mut sources: Vec<(VertexId, Value)>,
        mut sinks: Vec<VertexId>,
        mut edges: Vec<Edge>,
    ) -> Result<DpDag, DagError> {
        let n = vertex_count;
        if n == 0 {
            return Err(DagError::Empty);
        }
        let check = |v: VertexId| {
            if v == 0 || v > n {
                Err(DagError::VertexOutOfRange { vertex: v as u64, count: n })
            } else {
                Ok(())
            }
        };
        let len = n as usize + 1;

        edges.sort_by_key(|e| (e.from, e.to));
        for pair in edges.windows(2) {
            if pair[0].from == pair[1].from && pair[0].to == pair[1].to {
                return Err(DagError::DuplicateEdge { from: pair[0].from, to: pair[0].to });
            }
        }
        let mut in_degree = vec![0u32; len];
        let mut out_degree = vec![0u32; len];
        for e in &edges {
            check(e.from)?;
            check(e.to)?;
            if e.from >= e.to {
                return Err(DagError::BackwardEdge { from: e.from, to: e.to });
            }
            if !kind.admits(e.weight) {
                return Err(DagError::InadmissibleWeight { from: e.from, to: e.to, weight: e.weight, kind });
            }
            in_degree[e.to as usize] += 1;
            out_degree[e.from as usize] += 1;
        }
        for (v, &d) in in_degree.iter().enumerate() {
            if d as usize > delta_max {
                return Err(DagError::InDegreeExceeded { vertex: v as VertexId, degree: d as usize, cap: delta_max });
            }
        }

        sources.sort_by_key(|&(v, _)| v);
        if sources.is_empty() {
            return Err(DagError::NoSources);
        }
        let mut source_init = vec![None; len];
        for &(v, init) in &sources {
            check(v)?;
            if source_init[v as usize].is_some() {
                return Err(DagError::DuplicateSource { vertex: v });
            }
            if in_degree[v as usize] > 0 {
                return Err(DagError::SourceHasPredecessor { vertex: v });
            }
            if !kind.admits(init) {
                return Err(DagError::InadmissibleInit { vertex: v, value: init, kind });
            }
            source_init[v as usize] = Some(init);
        }

        sinks.sort_unstable();
        if sinks.is_empty() {
            return Err(DagError::NoSinks);
        }
        for pair in sinks.windows(2) {
            if pair[0] == pair[1] {
                return Err(DagError::DuplicateSink { vertex: pair[0] });
            }
        }
        for &t in &sinks {
            check(t)?;
        }

        let offsets = |deg: &[u32]| {
            let mut off = Vec::with_capacity(len + 1);
            let mut acc = 0u32;
            off.push(0);
            for &d in deg {
                acc += d;
                off.push(acc);
            }
            off
        };
        let in_offsets = offsets(&in_degree);
        let out_offsets = offsets(&out_degree);

        // Edges are sorted by (from, to): filling both sides in that order keeps
        // every predecessor list sorted by `from` and every successor list by `to`.
        let m = edges.len();
        let mut in_src = vec![0; m];
        let mut in_weight = vec![Value::BOTTOM; m];
        let mut out_dst = vec![0; m];
        let mut out_weight = vec![Value::BOTTOM; m];
        let mut in_fill: Vec<u32> = in_offsets[..len].to_vec();
        let mut out_fill: Vec<u32> = out_offsets[..len].to_vec();
        for e in &edges {
            let slot = &mut in_fill[e.to as usize];
            in_src[*slot as usize] = e.from;
            in_weight[*slot as usize] = e.weight;
            *slot += 1;
            let slot = &mut out_fill[e.from as usize];
            out_dst[*slot as usize] = e.to;
            out_weight[*slot as usize] = e.weight;
            *slot += 1;
        }

        let mut max_successor = vec![0; len];
        for v in 1..len {
            let (a, b) = (out_offsets[v] as usize, out_offsets[v + 1] as usize);
            if b > a {
                max_successor[v] = out_dst[b - 1];
            }
        }
        max_successor[0] = sources.last().map(|s| s.0).unwrap_or(0);

        let omega = frontier_width_of(n, &max_successor);
        Ok(DpDag {
            n,
            kind,
            delta_max,
            in_offsets,
            in_src,
            in_weight,
            out_offsets,
            out_dst,
            out_weight,
            max_successor,
            source_init,
            sources: sources.into_iter().map(|(v, _)| v).collect(),
            sinks,
            omega,
        })
    }

    /// Number of vertices, `T`.
    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out_dst.len()
    }

    pub fn semiring(&self) -> SemiringKind {
        self.kind
    }

    pub fn delta_max(&self) -> usize {
        self.delta_max
    }

    /// Frontier width of the stored order, precomputed at load time.
    pub fn frontier_width(&self) -> usize {
        self.omega
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v >= 1 && v <= self.n
    }

    pub(crate) fn check_vertex(&self, v: u64) -> Result<VertexId, DagError> {
        if v >= 1 && v <= self.n as u64 {
            Ok(v as VertexId)
        } else {
            Err(DagError::VertexOutOfRange { vertex: v, count: self.n })
        }
    }

    /// Predecessors of `v` with edge weights, in canonical edge order.
    pub fn predecessors(&self, v: VertexId) -> impl ExactSizeIterator<Item = (VertexId, Value)> + '_ {
        let (a, b) = self.in_range(v);
        self.in_src[a..b].iter().copied().zip(self.in_weight[a..b].iter().copied())
    }

    pub(crate) fn pred_slices(&self, v: VertexId) -> (&[VertexId], &[Value]) {
        let (a, b) = self.in_range(v);
        (&self.in_src[a..b], &self.in_weight[a..b])
    }

    /// Successors of `v` in increasing order.
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        let (a, b) = self.out_range(v);
        &self.out_dst[a..b]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        let (a, b) = self.in_range(v);
        b - a
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        let (a, b) = self.out_range(v);
        b - a
    }

    /// Largest successor index of `v`, or 0 if `v` has none.
    pub fn max_successor(&self, v: VertexId) -> VertexId {
        self.max_successor[v as usize]
    }

    /// Largest successor of `v` that is `<= hi`, or 0.
    ///
    /// Vertex 0 stands for the virtual root whose successors are the sources.
    pub fn max_successor_within(&self, v: VertexId, hi: VertexId) -> VertexId {
        let top = self.max_successor[v as usize];
        if top <= hi {
            return top;
        }
        let list: &[VertexId] = if v == 0 { &self.sources } else { self.successors(v) };
        let idx = list.partition_point(|&w| w <= hi);
        if idx == 0 {
            0
        } else {
            list[idx - 1]
        }
    }

    /// Weight of edge `(u, v)`, if present.
    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<Value> {
        if !self.contains(u) {
            return None;
        }
        let (a, b) = self.out_range(u);
        self.out_dst[a..b].binary_search(&v).ok().map(|i| self.out_weight[a + i])
    }

    /// Initial value of `v` if it is a source.
    pub fn source_value(&self, v: VertexId) -> Option<Value> {
        self.source_init.get(v as usize).copied().flatten()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.source_value(v).is_some()
    }

    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.sinks.binary_search(&v).is_ok()
    }

    /// Whether any source lies in `[lo, hi]`.
    pub fn has_source_in(&self, lo: VertexId, hi: VertexId) -> bool {
        let idx = self.sources.partition_point(|&s| s < lo);
        idx < self.sources.len() && self.sources[idx] <= hi
    }

    /// All edges in canonical `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (1..=self.n).flat_map(move |u| {
            let (a, b) = self.out_range(u);
            (a..b).map(move |i| Edge { from: u, to: self.out_dst[i], weight: self.out_weight[i] })
        })
    }

    /// Copy of this DAG with one edge weight replaced.
    pub fn with_weight(&self, from: VertexId, to: VertexId, weight: Value) -> Option<DpDag> {
        self.weight(from, to)?;
        let mut dag = self.clone();
        let (a, b) = dag.out_range(from);
        let i = a + dag.out_dst[a..b].binary_search(&to).ok()?;
        dag.out_weight[i] = weight;
        let (a, b) = dag.in_range(to);
        let j = a + dag.in_src[a..b].binary_search(&from).ok()?;
        dag.in_weight[j] = weight;
        Some(dag)
    }

    fn in_range(&self, v: VertexId) -> (usize, usize) {
        (self.in_offsets[v as usize] as usize, self.in_offsets[v as usize + 1] as usize)
    }

    fn out_range(&self, v: VertexId) -> (usize, usize) {
        (self.out_offsets[v as usize] as usize, self.out_offsets[v as usize + 1] as usize)
    }
}

fn frontier_width_of(n: u32, max_successor: &[VertexId]) -> usize {
    // v belongs to Front(ell) exactly for ell in [v, max_successor[v]).
    let mut delta = vec![0i64; n as usize + 2];
    for v in 1..=n as usize {
        let ms = max_successor[v] as usize;
        if ms > v {
            delta[v] += 1;
            delta[ms] -= 1;
        }
    }
    let mut width = 0i64;
    let mut best = 0i64;
    for d in delta {
        width += d;
        best = best.max(width);
    }
    best as usize
}

/// A contiguous range `[lo, hi]` of topological indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: VertexId,
    pub hi: VertexId,
}

impl Interval {
    pub fn new(lo: VertexId, hi: VertexId) -> Result<Self, DagError> {
        if lo == 0 || lo > hi {
            return Err(DagError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `⌊(lo + hi) / 2⌋`; lies in `[lo, hi)` whenever `lo < hi`.
    pub fn midpoint(&self) -> VertexId {
        ((self.lo as u64 + self.hi as u64) / 2) as VertexId
    }

    pub fn left(&self) -> Interval {
        Interval { lo: self.lo, hi: self.midpoint() }
    }

    /// Right half; only meaningful when `lo < hi`.
    pub fn right(&self) -> Interval {
        Interval { lo: self.midpoint() + 1, hi: self.hi }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Vertices `v <= ell` with a successor beyond `ell`, ascending.
pub fn frontier_at(dag: &DpDag, ell: u64) -> Result<Vec<VertexId>, DagError> {
    if ell > dag.vertex_count() as u64 {
        return Err(DagError::CutOutOfRange { ell, count: dag.vertex_count() });
    }
    let ell = ell as VertexId;
    Ok((1..=ell).filter(|&v| dag.max_successor(v) > ell).collect())
}

/// Maximum frontier size over all cuts.
pub fn frontier_width(dag: &DpDag) -> usize {
    dag.frontier_width()
}

/// Vertices of `interval` at or before its midpoint that have a successor past
/// the midpoint, ascending.
pub fn middle_frontier(dag: &DpDag, interval: Interval) -> Vec<VertexId> {
    let m = interval.midpoint();
    (interval.lo..=m.min(interval.hi)).filter(|&v| dag.max_successor(v) > m).collect()
}
