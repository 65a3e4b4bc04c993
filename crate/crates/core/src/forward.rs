//! Forward DP passes with a rolling frontier buffer.
//!
//! Every pass walks a contiguous scope `[lo, hi]` in topological order. A
//! vertex stays in the buffer only while it still has a successor inside the
//! scope, so the buffer is a subset of the global frontier at every step.

use std::mem;

use crate::dag::{DpDag, VertexId};
use crate::error::{TraceError, Violation};
use crate::semiring::{improves, Value};

/// Known values that seed a local pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Every source inside the scope starts from its initial value.
    Sources,
    /// Explicit `(vertex, value)` pairs, sorted by vertex.
    Vertices(Vec<(VertexId, Value)>),
}

impl Boundary {
    pub fn empty() -> Self {
        Boundary::Vertices(Vec::new())
    }

    pub fn single(vertex: VertexId, value: Value) -> Self {
        Boundary::Vertices(vec![(vertex, value)])
    }

    /// Builds an explicit boundary; later duplicates overwrite earlier ones.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VertexId, Value)>) -> Self {
        let mut v: Vec<_> = pairs.into_iter().collect();
        v.sort_by_key(|p| p.0);
        v.reverse();
        v.dedup_by_key(|p| p.0);
        v.reverse();
        Boundary::Vertices(v)
    }

    /// Value assigned to `v` by an explicit boundary.
    pub fn value_of(&self, v: VertexId) -> Option<Value> {
        match self {
            Boundary::Sources => None,
            Boundary::Vertices(list) => list.binary_search_by_key(&v, |p| p.0).ok().map(|i| list[i].1),
        }
    }

    pub fn contains(&self, dag: &DpDag, v: VertexId) -> bool {
        match self {
            Boundary::Sources => dag.is_source(v),
            Boundary::Vertices(_) => self.value_of(v).is_some(),
        }
    }

    /// Live words charged for holding this boundary. Source values are read
    /// from the input, so `Sources` costs a single flag word.
    pub fn words(&self) -> usize {
        match self {
            Boundary::Sources => 1,
            Boundary::Vertices(list) => 2 * list.len(),
        }
    }
}

/// Live `(vertex, value, label)` entries of one forward pass, sorted by vertex.
#[derive(Clone, Debug, Default)]
pub struct FrontierBuffer<L = ()> {
    entries: Vec<(VertexId, Value, L)>,
    peak: usize,
}

impl<L: Copy> FrontierBuffer<L> {
    pub fn new() -> Self {
        FrontierBuffer { entries: Vec::new(), peak: 0 }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest size observed since construction or the last `clear`.
    pub fn peak_size_observed(&self) -> usize {
        self.peak
    }

    /// Words per entry: the value, plus one when a label is carried.
    pub fn words_per_entry() -> usize {
        if mem::size_of::<L>() == 0 {
            1
        } else {
            2
        }
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> Option<(Value, L)> {
        self.position(v).ok().map(|i| (self.entries[i].1, self.entries[i].2))
    }

    pub fn insert(&mut self, v: VertexId, value: Value, label: L) {
        match self.entries.last() {
            Some(last) if last.0 >= v => match self.position(v) {
                Ok(i) => self.entries[i] = (v, value, label),
                Err(i) => self.entries.insert(i, (v, value, label)),
            },
            _ => self.entries.push((v, value, label)),
        }
        self.peak = self.peak.max(self.entries.len());
    }

    pub fn remove(&mut self, v: VertexId) -> Option<Value> {
        self.position(v).ok().map(|i| self.entries.remove(i).1)
    }

    pub fn keys(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.entries.iter().map(|e| e.0)
    }

    pub fn clear(&mut self) {
        self.entries.clear();
        self.peak = 0;
    }

    #[inline]
    fn position(&self, v: VertexId) -> Result<usize, usize> {
        self.entries.binary_search_by_key(&v, |e| e.0)
    }
}

/// What a single pass computed for one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Step<L> {
    pub vertex: VertexId,
    pub value: Value,
    /// Canonical in-scope predecessor; `None` for seeded, source and
    /// unreachable vertices.
    pub pred: Option<VertexId>,
    pub label: L,
}

/// Seeds of one pass.
pub(crate) struct Seeds<'a, L> {
    /// Value and label of the virtual root whose out-edges reach every source
    /// with weight equal to the source's initial value.
    pub root: Option<(Value, L)>,
    /// Explicit seeds sorted by vertex. Seeds before the scope are preloaded;
    /// seeds inside the scope replace the recurrence at their index.
    pub vertices: &'a [(VertexId, Value, L)],
}

/// Instrumented runner shared by all passes of one computation.
#[derive(Debug)]
pub(crate) struct PassRunner<'d> {
    pub dag: &'d DpDag,
    /// Checked after every step when set.
    pub buffer_limit: Option<usize>,
    pub passes: u64,
    pub visits: u64,
    pub peak_entries: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct PassStats {
    pub peak_entries: usize,
}

impl<'d> PassRunner<'d> {
    pub fn new(dag: &'d DpDag, buffer_limit: Option<usize>) -> Self {
        PassRunner { dag, buffer_limit, passes: 0, visits: 0, peak_entries: 0 }
    }

    /// Runs the recurrence over `[lo, hi]`, calling `visit` after each vertex.
    /// `visit` returns `false` to stop early.
    pub fn sweep<L, F>(
        &mut self,
        lo: VertexId,
        hi: VertexId,
        seeds: Seeds<'_, L>,
        mut visit: F,
    ) -> Result<PassStats, TraceError>
    where
        L: Copy + Default,
        F: FnMut(Step<L>) -> bool,
    {
        let dag = self.dag;
        self.passes += 1;
        let mut buffer: FrontierBuffer<L> = FrontierBuffer::new();
        let mut pending = seeds.vertices.iter().peekable();
        while let Some(&&(u, value, label)) = pending.peek() {
            if u >= lo {
                break;
            }
            if dag.max_successor_within(u, hi) >= lo {
                buffer.insert(u, value, label);
            }
            pending.next();
        }
        self.check(&buffer, lo.saturating_sub(1))?;

        for k in lo..=hi {
            self.visits += 1;
            let seeded = match pending.peek() {
                Some(&&(u, value, label)) if u == k => {
                    pending.next();
                    Some((value, label))
                }
                _ => None,
            };
            let (preds, weights) = dag.pred_slices(k);
            let step = if let Some((value, label)) = seeded {
                Step { vertex: k, value, pred: None, label }
            } else if let Some(init) = dag.source_value(k) {
                match seeds.root {
                    Some((rv, rl)) => Step { vertex: k, value: rv.extend(init), pred: None, label: rl },
                    None => Step { vertex: k, value: Value::BOTTOM, pred: None, label: L::default() },
                }
            } else {
                let mut step = Step { vertex: k, value: Value::BOTTOM, pred: None, label: L::default() };
                for (&u, &w) in preds.iter().zip(weights) {
                    if let Some((xu, lu)) = buffer.get(u) {
                        let cand = xu.extend(w);
                        if improves(cand, step.value) {
                            step.value = cand;
                            step.pred = Some(u);
                            step.label = lu;
                        }
                    }
                }
                step
            };

            // Evict predecessors whose last in-scope successor is k.
            for &u in preds {
                if dag.max_successor_within(u, hi) == k {
                    buffer.remove(u);
                }
            }
            if dag.max_successor_within(k, hi) > k {
                buffer.insert(k, step.value, step.label);
            }
            self.check(&buffer, k)?;
            if !visit(step) {
                break;
            }
        }
        let stats = PassStats { peak_entries: buffer.peak_size_observed() };
        self.peak_entries = self.peak_entries.max(stats.peak_entries);
        Ok(stats)
    }

    #[inline]
    fn check<L: Copy>(&self, buffer: &FrontierBuffer<L>, vertex: VertexId) -> Result<(), TraceError> {
        match self.buffer_limit {
            Some(limit) if buffer.len() > limit => {
                Err(Violation::BufferBound { vertex, size: buffer.len(), limit }.into())
            }
            _ => Ok(()),
        }
    }

    /// Global value of `target`, stopping as soon as it is computed.
    pub fn global(&mut self, target: VertexId) -> Result<(Value, PassStats), TraceError> {
        let mut out = Value::BOTTOM;
        let stats = self.sweep::<(), _>(1, target, Seeds { root: Some((Value::ONE, ())), vertices: &[] }, |s| {
            if s.vertex == target {
                out = s.value;
            }
            true
        })?;
        Ok((out, stats))
    }

    /// Values at `targets` (sorted, inside `[lo, hi]`) of the pass seeded by `boundary`.
    pub fn prefix(
        &mut self,
        lo: VertexId,
        hi: VertexId,
        boundary: &Boundary,
        targets: &[VertexId],
    ) -> Result<(Vec<Value>, PassStats), TraceError> {
        let mut out = vec![Value::BOTTOM; targets.len()];
        let mut next = 0;
        let seeds: Vec<(VertexId, Value, ())>;
        let seeds = match boundary {
            Boundary::Sources => Seeds { root: Some((Value::ONE, ())), vertices: &[][..] },
            Boundary::Vertices(list) => {
                seeds = list.iter().map(|&(v, x)| (v, x, ())).collect();
                Seeds { root: None, vertices: &seeds[..] }
            }
        };
        let stats = self.sweep(lo, hi, seeds, |s| {
            while next < targets.len() && targets[next] < s.vertex {
                next += 1;
            }
            if next < targets.len() && targets[next] == s.vertex {
                out[next] = s.value;
                next += 1;
            }
            true
        })?;
        Ok((out, stats))
    }

    /// Best value from `source` (seeded with the multiplicative identity) to
    /// `sink`, with every vertex after `source` restricted to `[scope_lo, sink]`.
    /// `source == 0` seeds the virtual root, i.e. every source in scope.
    pub fn suffix(
        &mut self,
        source: VertexId,
        scope_lo: VertexId,
        sink: VertexId,
    ) -> Result<(Value, PassStats), TraceError> {
        let single = [(source, Value::ONE, ())];
        let seeds = if source == 0 {
            Seeds { root: Some((Value::ONE, ())), vertices: &[][..] }
        } else {
            Seeds { root: None, vertices: &single[..] }
        };
        let mut out = Value::BOTTOM;
        let stats = self.sweep(scope_lo, sink, seeds, |s| {
            if s.vertex == sink {
                out = s.value;
            }
            true
        })?;
        Ok((out, stats))
    }
}

/// Global value `x_target`. Unreachable targets yield bottom.
pub fn global_forward(dag: &DpDag, target: u64) -> Result<Value, TraceError> {
    let target = dag.check_vertex(target)?;
    Ok(PassRunner::new(dag, None).global(target)?.0)
}

/// Values of `targets` for the pass over `[interval_lo, interval_mid]` seeded by
/// `boundary`, in the order of `targets`.
///
/// Predecessors below `interval_lo` that the boundary does not name
/// contribute nothing.
pub fn local_prefix_values(
    dag: &DpDag,
    interval_lo: u64,
    interval_mid: u64,
    boundary: &Boundary,
    targets: &[VertexId],
) -> Result<Vec<Value>, TraceError> {
    let lo = dag.check_vertex(interval_lo)?;
    let hi = dag.check_vertex(interval_mid)?;
    if lo > hi {
        return Err(TraceError::Precondition(format!("empty interval [{lo}, {hi}]")));
    }
    if targets.windows(2).any(|w| w[0] >= w[1]) || targets.iter().any(|&t| t < lo || t > hi) {
        return Err(TraceError::Precondition(format!("targets must be sorted and inside [{lo}, {hi}]")));
    }
    Ok(PassRunner::new(dag, None).prefix(lo, hi, boundary, targets)?.0)
}

/// Best value of a path `source → sink` whose other vertices lie in
/// `(source, interval_hi]`, with `source` seeded by the multiplicative identity.
pub fn suffix_value(dag: &DpDag, source: u64, interval_hi: u64, sink: u64) -> Result<Value, TraceError> {
    let source = dag.check_vertex(source)?;
    let hi = dag.check_vertex(interval_hi)?;
    let sink = dag.check_vertex(sink)?;
    if !(source < sink && sink <= hi) {
        return Err(TraceError::Precondition(format!("need source < sink <= interval_hi, got {source}, {sink}, {hi}")));
    }
    Ok(PassRunner::new(dag, None).suffix(source, source + 1, sink)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{DagBuilder, DpDag};
    use crate::semiring::SemiringKind;

    fn unit_chain(n: u32) -> DpDag {
        let mut b = DagBuilder::new(n, SemiringKind::MaxPlus);
        b.add_source(1, Value::ONE).add_sink(n);
        for v in 1..n {
            b.add_edge(v, v + 1, Value::new(1));
        }
        b.build().unwrap()
    }

    #[test]
    fn chain_global_value() {
        let dag = unit_chain(5);
        assert_eq!(global_forward(&dag, 5).unwrap(), Value::new(4));
        assert_eq!(global_forward(&dag, 1).unwrap(), Value::ONE);
        assert!(global_forward(&dag, 6).is_err());
        assert!(global_forward(&dag, 0).is_err());
    }

    #[test]
    fn isolated_sink_is_bottom() {
        let dag = DpDag::builder(3, SemiringKind::MaxPlus)
            .source(1, Value::ONE)
            .sink(2)
            .sink(3)
            .edge(1, 2, Value::new(1))
            .build()
            .unwrap();
        assert_eq!(global_forward(&dag, 3).unwrap(), Value::BOTTOM);
    }

    #[test]
    fn full_range_prefix_matches_global() {
        let dag = unit_chain(7);
        let vals = local_prefix_values(&dag, 1, 7, &Boundary::Sources, &[3, 7]).unwrap();
        assert_eq!(vals, vec![Value::new(2), Value::new(6)]);
        let empty = local_prefix_values(&dag, 1, 7, &Boundary::empty(), &[3, 7]).unwrap();
        assert!(empty.iter().all(|v| v.is_bottom()));
        // Explicit seed before the interval.
        let seeded = local_prefix_values(&dag, 4, 6, &Boundary::single(3, Value::new(10)), &[6]).unwrap();
        assert_eq!(seeded, vec![Value::new(13)]);
        assert!(local_prefix_values(&dag, 4, 6, &Boundary::empty(), &[3]).is_err());
    }

    #[test]
    fn suffix_examples() {
        let dag = DpDag::builder(4, SemiringKind::MaxPlus)
            .source(1, Value::ONE)
            .sink(4)
            .edge(1, 2, Value::new(1))
            .edge(2, 4, Value::new(3))
            .edge(1, 3, Value::new(1))
            .build()
            .unwrap();
        assert_eq!(suffix_value(&dag, 2, 4, 4).unwrap(), Value::new(3));
        assert_eq!(suffix_value(&dag, 3, 4, 4).unwrap(), Value::BOTTOM);
        assert!(suffix_value(&dag, 4, 4, 4).is_err());
    }

    #[test]
    fn boundary_wins_inside_interval() {
        let dag = unit_chain(5);
        let b = Boundary::from_pairs([(3, Value::new(100)), (3, Value::new(50))]);
        assert_eq!(b.value_of(3), Some(Value::new(50)));
        let vals = local_prefix_values(&dag, 1, 5, &b, &[5]).unwrap();
        assert_eq!(vals, vec![Value::new(52)]);
    }

    #[test]
    fn buffer_stays_within_chain_width() {
        let dag = unit_chain(50);
        let mut runner = PassRunner::new(&dag, Some(dag.frontier_width() + 1));
        let (v, stats) = runner.global(50).unwrap();
        assert_eq!(v, Value::new(49));
        assert!(stats.peak_entries <= 1);
    }

    #[test]
    fn buffer_limit_violation_is_reported() {
        // Wide fan: vertex 1 feeds 2..=6, all feed 7.
        let mut b = DagBuilder::new(7, SemiringKind::MaxPlus);
        b.add_source(1, Value::ONE).add_sink(7);
        for v in 2..=6 {
            b.add_edge(1, v, Value::ONE).add_edge(v, 7, Value::ONE);
        }
        let dag = b.build().unwrap();
        let mut runner = PassRunner::new(&dag, Some(2));
        assert!(matches!(runner.global(7), Err(TraceError::Invariant(Violation::BufferBound { .. }))));
    }

    #[test]
    fn frontier_buffer_basics() {
        let mut buf: FrontierBuffer = FrontierBuffer::new();
        buf.insert(5, Value::new(1), ());
        buf.insert(2, Value::new(2), ());
        buf.insert(9, Value::new(3), ());
        assert_eq!(buf.keys().collect::<Vec<_>>(), vec![2, 5, 9]);
        assert_eq!(buf.remove(5), Some(Value::new(1)));
        assert_eq!(buf.get(5), None);
        assert_eq!(buf.peak_size_observed(), 3);
        assert_eq!(FrontierBuffer::<()>::words_per_entry(), 1);
        assert_eq!(FrontierBuffer::<u32>::words_per_entry(), 2);
    }
}
