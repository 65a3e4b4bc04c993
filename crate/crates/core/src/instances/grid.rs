use super::BuildError;
use crate::dag::{DagBuilder, DpDag, VertexId};
use crate::semiring::{SemiringKind, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scoring {
    pub match_score: i64,
    pub mismatch: i64,
    pub gap: i64,
}

impl Scoring {
    /// Match 1, mismatch and gap 0.
    pub const fn lcs() -> Self {
        Scoring { match_score: 1, mismatch: 0, gap: 0 }
    }

    /// Match 2, mismatch -1, gap -1.
    pub const fn alignment() -> Self {
        Scoring { match_score: 2, mismatch: -1, gap: -1 }
    }

    fn kind(&self) -> SemiringKind {
        if self.match_score >= 0 && self.mismatch >= 0 && self.gap >= 0 {
            SemiringKind::Lcs
        } else {
            SemiringKind::MaxPlus
        }
    }

    fn diagonal(&self, x: u8, y: u8) -> i64 {
        if x == y {
            self.match_score
        } else {
            self.mismatch
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GridOrder {
    RowMajor,
    #[default]
    ColumnMajor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub scoring: Scoring,
    pub order: GridOrder,
    /// Band width `B`; cells with `|i - j| <= B/2` are kept.
    pub band: Option<u32>,
}

impl GridSpec {
    pub fn new(a: impl AsRef<[u8]>, b: impl AsRef<[u8]>, scoring: Scoring) -> Self {
        GridSpec { a: a.as_ref().to_vec(), b: b.as_ref().to_vec(), scoring, order: GridOrder::default(), band: None }
    }

    pub fn order(mut self, order: GridOrder) -> Self {
        self.order = order;
        self
    }

    pub fn band(mut self, width: u32) -> Self {
        self.band = Some(width);
        self
    }
}

/// Maps cells `(i, j)`, `0 <= i <= m`, `0 <= j <= n`, to vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridLayout {
    m: usize,
    n: usize,
    order: GridOrder,
    half: Option<usize>,
    // offsets[k] = number of cells in outer lines before line k.
    offsets: Vec<u32>,
}

impl GridLayout {
    pub fn new(m: usize, n: usize, order: GridOrder, band: Option<u32>) -> Result<Self, BuildError> {
        let half = band.map(|b| b as usize / 2);
        if let Some(h) = half {
            if m.abs_diff(n) > h {
                return Err(BuildError::BandTooNarrow { m, n, half_width: h });
            }
        }
        let mut layout = GridLayout { m, n, order, half, offsets: Vec::new() };
        let outer = layout.outer_len();
        let mut offsets = Vec::with_capacity(outer + 1);
        let mut acc: u64 = 0;
        for k in 0..outer {
            offsets.push(acc as u32);
            let (a, b) = layout.inner_range(k);
            acc += (b - a + 1) as u64;
        }
        if acc > u32::MAX as u64 {
            return Err(BuildError::Invalid("grid too large".into()));
        }
        offsets.push(acc as u32);
        layout.offsets = offsets;
        Ok(layout)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u32 {
        *self.offsets.last().unwrap()
    }

    fn outer_len(&self) -> usize {
        match self.order {
            GridOrder::ColumnMajor => self.n + 1,
            GridOrder::RowMajor => self.m + 1,
        }
    }

    fn inner_max(&self) -> usize {
        match self.order {
            GridOrder::ColumnMajor => self.m,
            GridOrder::RowMajor => self.n,
        }
    }

    fn inner_range(&self, k: usize) -> (usize, usize) {
        match self.half {
            None => (0, self.inner_max()),
            Some(h) => (k.saturating_sub(h), (k + h).min(self.inner_max())),
        }
    }

    pub fn index(&self, i: usize, j: usize) -> Option<VertexId> {
        if i > self.m || j > self.n {
            return None;
        }
        let (outer, inner) = match self.order {
            GridOrder::ColumnMajor => (j, i),
            GridOrder::RowMajor => (i, j),
        };
        let (a, b) = self.inner_range(outer);
        (a <= inner && inner <= b).then(|| self.offsets[outer] + (inner - a) as u32 + 1)
    }

    pub fn cell(&self, v: VertexId) -> Option<(usize, usize)> {
        if v == 0 || v > self.vertex_count() {
            return None;
        }
        let outer = self.offsets.partition_point(|&o| o < v) - 1;
        let (a, _) = self.inner_range(outer);
        let inner = a + (v - 1 - self.offsets[outer]) as usize;
        Some(match self.order {
            GridOrder::ColumnMajor => (inner, outer),
            GridOrder::RowMajor => (outer, inner),
        })
    }
}

/// Alignment grid: source `(0,0)`, sink `(m,n)`, gap edges from `(i-1,j)` and
/// `(i,j-1)`, diagonal edge from `(i-1,j-1)` scored on `a[i-1]` vs `b[j-1]`.
pub fn build_grid(spec: &GridSpec) -> Result<DpDag, BuildError> {
    let (m, n) = (spec.a.len(), spec.b.len());
    let layout = GridLayout::new(m, n, spec.order, spec.band)?;
    let mut b = DagBuilder::new(layout.vertex_count(), spec.scoring.kind());
    b.add_source(layout.index(0, 0).unwrap(), Value::ONE);
    b.add_sink(layout.index(m, n).unwrap());
    let s = &spec.scoring;
    for j in 0..=n {
        for i in 0..=m {
            let Some(v) = layout.index(i, j) else { continue };
            if i > 0 {
                if let Some(u) = layout.index(i - 1, j) {
                    b.add_edge(u, v, Value::new(s.gap));
                }
            }
            if j > 0 {
                if let Some(u) = layout.index(i, j - 1) {
                    b.add_edge(u, v, Value::new(s.gap));
                }
            }
            if i > 0 && j > 0 {
                if let Some(u) = layout.index(i - 1, j - 1) {
                    b.add_edge(u, v, Value::new(s.diagonal(spec.a[i - 1], spec.b[j - 1])));
                }
            }
        }
    }
    Ok(b.build()?)
}

/// Two-sided divide and conquer on the full grid: forward scores of the top
/// half meet reverse scores of the bottom half. Returns the optimal value and
/// one optimal cell path from `(0,0)` to `(m,n)`.
pub fn hirschberg_grid(a: &[u8], b: &[u8], scoring: &Scoring) -> (Value, Vec<(usize, usize)>) {
    let mut path = vec![(0, 0)];
    hirschberg_rec(a, b, 0, 0, scoring, &mut path);
    let mut value = 0i64;
    for w in path.windows(2) {
        let ((i0, j0), (i1, j1)) = (w[0], w[1]);
        value += if i1 > i0 && j1 > j0 { scoring.diagonal(a[i0], b[j0]) } else { scoring.gap };
    }
    (Value::new(value), path)
}

/// Last row of the score table for `a` against every prefix of `b`.
fn nw_last_row(a: &[u8], b: &[u8], s: &Scoring) -> Vec<i64> {
    let mut row: Vec<i64> = (0..=b.len() as i64).map(|j| j * s.gap).collect();
    for (i, &x) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = (i as i64 + 1) * s.gap;
        for (j, &y) in b.iter().enumerate() {
            let up = row[j + 1];
            let best = (diag + s.diagonal(x, y)).max(up + s.gap).max(row[j] + s.gap);
            diag = up;
            row[j + 1] = best;
        }
    }
    row
}

fn hirschberg_rec(a: &[u8], b: &[u8], i0: usize, j0: usize, s: &Scoring, path: &mut Vec<(usize, usize)>) {
    if a.is_empty() {
        path.extend((1..=b.len()).map(|j| (i0, j0 + j)));
        return;
    }
    if a.len() == 1 {
        // One row: either a diagonal at some column or a gap step down.
        let mut best = (s.gap + b.len() as i64 * s.gap, None);
        for (j, &y) in b.iter().enumerate() {
            let v = s.diagonal(a[0], y) + (b.len() as i64 - 1) * s.gap;
            if v > best.0 {
                best = (v, Some(j));
            }
        }
        match best.1 {
            Some(j) => {
                path.extend((1..=j).map(|k| (i0, j0 + k)));
                path.push((i0 + 1, j0 + j + 1));
                path.extend((j + 2..=b.len()).map(|k| (i0 + 1, j0 + k)));
            }
            None => {
                path.push((i0 + 1, j0));
                path.extend((1..=b.len()).map(|k| (i0 + 1, j0 + k)));
            }
        }
        return;
    }
    let mid = a.len() / 2;
    let top = nw_last_row(&a[..mid], b, s);
    let ra: Vec<u8> = a[mid..].iter().rev().copied().collect();
    let rb: Vec<u8> = b.iter().rev().copied().collect();
    let bottom = nw_last_row(&ra, &rb, s);
    let split = (0..=b.len()).max_by_key(|&j| (top[j] + bottom[b.len() - j], std::cmp::Reverse(j))).unwrap();
    hirschberg_rec(&a[..mid], &b[..split], i0, j0, s, path);
    hirschberg_rec(&a[mid..], &b[split..], i0 + mid, j0 + split, s, path);
}
