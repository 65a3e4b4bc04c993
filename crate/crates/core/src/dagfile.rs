//! Line-oriented text interchange format.
//!
//! ```text
//! dpdag 1
//! semiring max-plus
//! vertices 4
//! delta_max 8
//! sources 1
//! 1 0
//! sinks 1
//! 4
//! edges 3
//! 1 2 5
//! 1 3 2
//! 2 4 -1
//! ```
//!
//! Edge lines are written sorted by `(u, v)`. Blank lines and lines starting
//! with `#` are ignored on read.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::Path;
use std::{fs, str::FromStr};

use thiserror::Error;

use crate::dag::{DagError, DpDag, Edge, VertexId};
use crate::semiring::{SemiringKind, Value};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error(transparent)]
    Dag(#[from] DagError),
}

/// Serializes `dag` to a string.
pub fn to_string(dag: &DpDag) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dpdag {FORMAT_VERSION}");
    let _ = writeln!(s, "semiring {}", dag.semiring().tag());
    let _ = writeln!(s, "vertices {}", dag.vertex_count());
    let _ = writeln!(s, "delta_max {}", dag.delta_max());
    let _ = writeln!(s, "sources {}", dag.sources().len());
    for &v in dag.sources() {
        let _ = writeln!(s, "{v} {}", dag.source_value(v).unwrap().raw());
    }
    let _ = writeln!(s, "sinks {}", dag.sinks().len());
    for &v in dag.sinks() {
        let _ = writeln!(s, "{v}");
    }
    let _ = writeln!(s, "edges {}", dag.edge_count());
    for e in dag.edges() {
        let _ = writeln!(s, "{} {} {}", e.from, e.to, e.weight.raw());
    }
    s
}

pub fn write(dag: &DpDag, mut out: impl Write) -> io::Result<()> {
    out.write_all(to_string(dag).as_bytes())
}

pub fn write_file(dag: &DpDag, path: impl AsRef<Path>) -> io::Result<()> {
    fs::write(path, to_string(dag))
}

pub fn read(input: impl BufRead) -> Result<DpDag, FormatError> {
    let mut lines = Lines { inner: input.lines(), line: 0 };
    let version: u32 = lines.keyed("dpdag")?;
    if version != FORMAT_VERSION {
        return Err(lines.error(format!("unsupported version {version}")));
    }
    let tag: String = lines.keyed("semiring")?;
    let kind = SemiringKind::from_str(&tag).map_err(|e| lines.error(e.to_string()))?;
    let n: u32 = lines.keyed("vertices")?;
    let delta_max: usize = lines.keyed("delta_max")?;

    let count: usize = lines.keyed("sources")?;
    let mut sources = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let f = lines.fields::<2>("source line")?;
        sources.push((lines.num::<VertexId>(&f[0])?, Value::new(lines.value(&f[1])?)));
    }
    let count: usize = lines.keyed("sinks")?;
    let mut sinks = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let f = lines.fields::<1>("sink line")?;
        sinks.push(lines.num::<VertexId>(&f[0])?);
    }
    let count: usize = lines.keyed("edges")?;
    let mut edges = Vec::with_capacity(count.min(1 << 24));
    let mut last: Option<(VertexId, VertexId)> = None;
    for _ in 0..count {
        let f = lines.fields::<3>("edge line")?;
        let (from, to) = (lines.num::<VertexId>(&f[0])?, lines.num::<VertexId>(&f[1])?);
        if last.is_some_and(|p| p >= (from, to)) {
            return Err(lines.error("edges are not sorted by (u, v)".into()));
        }
        last = Some((from, to));
        edges.push(Edge { from, to, weight: Value::new(lines.value(&f[2])?) });
    }
    if let Some(extra) = lines.next_content()? {
        return Err(lines.error(format!("trailing content `{extra}`")));
    }
    Ok(DpDag::from_parts(n, kind, delta_max, sources, sinks, edges)?)
}

pub fn from_str(s: &str) -> Result<DpDag, FormatError> {
    read(s.as_bytes())
}

pub fn read_file(path: impl AsRef<Path>) -> Result<DpDag, FormatError> {
    let f = fs::File::open(path)?;
    read(io::BufReader::new(f))
}

struct Lines<B> {
    inner: io::Lines<B>,
    line: usize,
}

impl<B: BufRead> Lines<B> {
    fn error(&self, message: String) -> FormatError {
        FormatError::Parse { line: self.line, message }
    }

    fn next_content(&mut self) -> Result<Option<String>, FormatError> {
        for l in self.inner.by_ref() {
            self.line += 1;
            let l = l?;
            let t = l.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok(Some(t.to_string()));
            }
        }
        Ok(None)
    }

    fn fields<const K: usize>(&mut self, what: &'static str) -> Result<Vec<String>, FormatError> {
        let l = self.next_content()?.ok_or(FormatError::Truncated(what))?;
        let f: Vec<String> = l.split_whitespace().map(str::to_string).collect();
        if f.len() != K {
            return Err(self.error(format!("{what} needs {K} fields, got {}", f.len())));
        }
        Ok(f)
    }

    fn keyed<T: FromStr>(&mut self, key: &'static str) -> Result<T, FormatError> {
        let f = self.fields::<2>(key)?;
        if f[0] != key {
            return Err(self.error(format!("expected `{key}`, found `{}`", f[0])));
        }
        f[1].parse().map_err(|_| self.error(format!("bad value `{}` for `{key}`", f[1])))
    }

    fn num<T: FromStr>(&self, s: &str) -> Result<T, FormatError> {
        s.parse().map_err(|_| self.error(format!("bad number `{s}`")))
    }

    fn value(&self, s: &str) -> Result<i64, FormatError> {
        let v: i64 = self.num(s)?;
        if v == i64::MIN {
            return Err(self.error("bottom is not a valid weight".into()));
        }
        Ok(v)
    }
}
