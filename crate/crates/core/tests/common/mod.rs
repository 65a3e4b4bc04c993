#![allow(dead_code)]

use ftrace::{DagBuilder, DpDag, SemiringKind, Value, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Best source-to-`sink` path by exhaustive enumeration. Ties on value go to
/// the path whose vertex sequence, read backwards from the sink, is
/// lexicographically smallest.
pub fn brute_force(dag: &DpDag, sink: VertexId) -> Option<(Value, Vec<VertexId>)> {
    let mut best: Option<(i64, Vec<VertexId>)> = None;
    let mut stack = Vec::new();
    for &s in dag.sources() {
        let init = dag.source_value(s).unwrap().raw();
        stack.push(s);
        walk(dag, sink, init, &mut stack, &mut best);
        stack.pop();
    }
    best.map(|(v, p)| (Value::new(v), p))
}

fn walk(dag: &DpDag, sink: VertexId, acc: i64, stack: &mut Vec<VertexId>, best: &mut Option<(i64, Vec<VertexId>)>) {
    let v = *stack.last().unwrap();
    if v == sink {
        let better = match best {
            None => true,
            Some((bv, bp)) => acc > *bv || (acc == *bv && stack.iter().rev().lt(bp.iter().rev())),
        };
        if better {
            *best = Some((acc, stack.clone()));
        }
        return;
    }
    if v > sink {
        return;
    }
    for &w in dag.successors(v) {
        if w > sink {
            break;
        }
        stack.push(w);
        walk(dag, sink, acc + dag.weight(v, w).unwrap().raw(), stack, best);
        stack.pop();
    }
}

/// Every layered DAG with at most 3 layers of at most 3 vertices each and
/// every subset of edges between consecutive layers. Vertices without
/// predecessors are sources (initial value 0 in the first layer, 1 later);
/// vertices without successors are sinks. Weights lie in `{-1, 0, 1}`.
pub fn exhaustive_family() -> impl Iterator<Item = DpDag> {
    let mut shapes = Vec::new();
    for layers in 1..=3usize {
        let mut widths = vec![1usize; layers];
        loop {
            shapes.push(widths.clone());
            let mut i = 0;
            while i < layers && widths[i] == 3 {
                widths[i] = 1;
                i += 1;
            }
            if i == layers {
                break;
            }
            widths[i] += 1;
        }
    }
    shapes.into_iter().flat_map(|widths| {
        let mut start = vec![1u32];
        for w in &widths {
            start.push(start.last().unwrap() + *w as u32);
        }
        let mut slots = Vec::new();
        for l in 1..widths.len() {
            for u in start[l - 1]..start[l] {
                for v in start[l]..start[l + 1] {
                    slots.push((u, v));
                }
            }
        }
        let n = start[widths.len()] - 1;
        (0u32..1 << slots.len()).map(move |mask| {
            let mut b = DagBuilder::new(n, SemiringKind::MaxPlus);
            let mut has_pred = vec![false; n as usize + 1];
            let mut has_succ = vec![false; n as usize + 1];
            for (k, &(u, v)) in slots.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let w = ((u + 2 * v + mask) % 3) as i64 - 1;
                    b.add_edge(u, v, Value::new(w));
                    has_pred[v as usize] = true;
                    has_succ[u as usize] = true;
                }
            }
            for v in 1..=n {
                if !has_pred[v as usize] {
                    b.add_source(v, Value::new(if v < start[1] { 0 } else { 1 }));
                }
                if !has_succ[v as usize] {
                    b.add_sink(v);
                }
            }
            b.build().unwrap()
        })
    })
}

/// Irregular DAG: random edges with bounded span, several sources and sinks,
/// weights from a tiny range so ties are everywhere.
pub fn random_dag(seed: u64, n: u32) -> DpDag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = rng.gen_range(1..=n.max(2));
    let mut sources = vec![1];
    for v in 2..=n {
        if rng.gen_bool(0.15) {
            sources.push(v);
        }
    }
    let mut b = DagBuilder::new(n, SemiringKind::MaxPlus).delta_max(64);
    for &s in &sources {
        b.add_source(s, Value::new(rng.gen_range(-2..=2)));
    }
    for v in 2..=n {
        if sources.contains(&v) {
            continue;
        }
        let lo = v.saturating_sub(span).max(1);
        for u in lo..v {
            if rng.gen_bool(0.35) {
                b.add_edge(u, v, Value::new(rng.gen_range(-2..=2)));
            }
        }
    }
    for v in 1..=n {
        if v == n || rng.gen_bool(0.2) {
            b.add_sink(v);
        }
    }
    b.build().unwrap()
}

/// Textbook two-row score of aligning `a` with `b`.
pub fn two_row_score(a: &[u8], b: &[u8], match_score: i64, mismatch: i64, gap: i64) -> i64 {
    let mut prev: Vec<i64> = (0..=b.len()).map(|j| j as i64 * gap).collect();
    let mut cur = vec![0; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i as i64 * gap;
        for j in 1..=b.len() {
            let d = prev[j - 1] + if a[i - 1] == b[j - 1] { match_score } else { mismatch };
            cur[j] = d.max(prev[j] + gap).max(cur[j - 1] + gap);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
