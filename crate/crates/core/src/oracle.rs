//! Full-table baseline: every value and back-pointer stored at once.

use serde::{Deserialize, Serialize};

use crate::dag::{DpDag, VertexId};
use crate::error::TraceError;
use crate::semiring::{improves, Value};
use crate::traceback::{traceback, RunMetrics, TracebackConfig, WitnessPath};

/// Values and canonical predecessors of every vertex, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullTable {
    values: Vec<Value>,
    preds: Vec<Option<VertexId>>,
}

impl FullTable {
    pub fn vertex_count(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn value(&self, v: VertexId) -> Value {
        self.values[v as usize]
    }

    pub fn pred(&self, v: VertexId) -> Option<VertexId> {
        self.preds[v as usize]
    }

    /// Words held by the table: one value and one pointer per vertex.
    pub fn words(&self) -> usize {
        2 * self.vertex_count() as usize
    }
}

pub fn oracle_solve(dag: &DpDag) -> FullTable {
    let n = dag.vertex_count() as usize;
    let mut values = vec![Value::BOTTOM; n + 1];
    let mut preds = vec![None; n + 1];
    for v in 1..=dag.vertex_count() {
        if let Some(a) = dag.source_value(v) {
            values[v as usize] = a;
            continue;
        }
        let mut best = Value::BOTTOM;
        let mut arg = None;
        for (u, w) in dag.predecessors(v) {
            let c = values[u as usize].extend(w);
            if improves(c, best) {
                best = c;
                arg = Some(u);
            }
        }
        values[v as usize] = best;
        preds[v as usize] = arg;
    }
    FullTable { values, preds }
}

pub fn oracle_traceback(table: &FullTable, sink: VertexId) -> Result<WitnessPath, TraceError> {
    if sink == 0 || sink > table.vertex_count() {
        return Err(crate::dag::DagError::VertexOutOfRange { vertex: sink as u64, count: table.vertex_count() }.into());
    }
    let value = table.value(sink);
    if value.is_bottom() {
        return Err(TraceError::NoWitness { sink });
    }
    let mut vertices = vec![sink];
    let mut cur = sink;
    while let Some(p) = table.pred(cur) {
        vertices.push(p);
        cur = p;
    }
    vertices.reverse();
    Ok(WitnessPath { vertices, value })
}

/// Oracle path plus the metrics of the full-table run.
pub fn oracle_run(dag: &DpDag, sink: u64) -> Result<(WitnessPath, RunMetrics), TraceError> {
    let s = dag.check_vertex(sink)?;
    if !dag.is_sink(s) {
        return Err(TraceError::NotASink { vertex: s });
    }
    let table = oracle_solve(dag);
    let path = oracle_traceback(&table, s)?;
    let metrics = RunMetrics {
        peak_live_words: table.words(),
        forward_pass_count: 1,
        vertex_visit_count: dag.vertex_count() as u64,
        omega: dag.frontier_width(),
        root_boundary_words: dag.sources().len(),
        ..RunMetrics::default()
    };
    Ok((path, metrics))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub equal: bool,
    pub paths_equal: bool,
    pub values_equal: bool,
    /// First index where the vertex sequences differ.
    pub first_divergence: Option<usize>,
    pub length_a: usize,
    pub length_b: usize,
    /// `None` stands for "no witness".
    pub value_a: Option<i64>,
    pub value_b: Option<i64>,
    pub peak_live_words_a: usize,
    pub peak_live_words_b: usize,
    /// Ratios are `b / a`.
    pub peak_words_ratio: f64,
    pub forward_pass_ratio: f64,
    pub vertex_visit_ratio: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        if b == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        b / a
    }
}

pub fn compare_runs(a: &WitnessPath, b: &WitnessPath, ma: &RunMetrics, mb: &RunMetrics) -> ComparisonReport {
    let first_divergence = a
        .vertices
        .iter()
        .zip(&b.vertices)
        .position(|(x, y)| x != y)
        .or_else(|| (a.len() != b.len()).then(|| a.len().min(b.len())));
    let paths_equal = first_divergence.is_none();
    let values_equal = a.value == b.value;
    ComparisonReport {
        equal: paths_equal && values_equal,
        paths_equal,
        values_equal,
        first_divergence,
        length_a: a.len(),
        length_b: b.len(),
        value_a: a.value.finite(),
        value_b: b.value.finite(),
        peak_live_words_a: ma.peak_live_words,
        peak_live_words_b: mb.peak_live_words,
        peak_words_ratio: ratio(ma.peak_live_words as f64, mb.peak_live_words as f64),
        forward_pass_ratio: ratio(ma.forward_pass_count as f64, mb.forward_pass_count as f64),
        vertex_visit_ratio: ratio(ma.vertex_visit_count as f64, mb.vertex_visit_count as f64),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    Mismatch,
    /// Both sides agree the sink is unreachable.
    NoWitness,
}

/// Result of running traceback (side a) against the oracle (side b).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub verdict: Verdict,
    pub report: ComparisonReport,
    pub traceback_metrics: RunMetrics,
    pub oracle_metrics: RunMetrics,
}

/// Compares traceback with the oracle on the same DAG.
pub fn verify(dag: &DpDag, sink: u64, config: &TracebackConfig) -> Result<Verification, TraceError> {
    verify_pair(dag, dag, sink, config)
}

/// Runs traceback on `trace_dag` and the oracle on `oracle_dag`. Used for
/// negative controls where one side sees a perturbed instance.
pub fn verify_pair(
    trace_dag: &DpDag,
    oracle_dag: &DpDag,
    sink: u64,
    config: &TracebackConfig,
) -> Result<Verification, TraceError> {
    let side = |r: Result<(WitnessPath, RunMetrics), TraceError>| match r {
        Ok(x) => Ok(Some(x)),
        Err(TraceError::NoWitness { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let a = side(traceback(trace_dag, sink, config))?;
    let b = side(oracle_run(oracle_dag, sink))?;
    let both_missing = a.is_none() && b.is_none();
    let unreachable = || (WitnessPath { vertices: Vec::new(), value: Value::BOTTOM }, RunMetrics::default());
    let (pa, ma) = a.unwrap_or_else(unreachable);
    let (pb, mb) = b.unwrap_or_else(unreachable);
    let report = compare_runs(&pa, &pb, &ma, &mb);
    let verdict = if both_missing {
        Verdict::NoWitness
    } else if report.equal {
        Verdict::Equal
    } else {
        Verdict::Mismatch
    };
    Ok(Verification { verdict, report, traceback_metrics: ma, oracle_metrics: mb })
}
