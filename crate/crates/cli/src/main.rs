//! `ftrace`: build DP DAG instances, trace witnesses, check them against the
//! full-table oracle and sweep space metrics.

mod ranges;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftrace::dagfile::{self, FormatError};
use ftrace::instances::{
    build_chain, build_grid, build_lb_gadget, build_random_layered, BuildError, ChainWeights, GadgetEncoding,
    GadgetSpec, GridOrder, GridSpec, LayeredSpec, Scoring,
};
use ftrace::sweep::{random_dna, run_row, Family, SweepRow};
use ftrace::{
    oracle_run, oracle_solve, oracle_traceback, traceback, verify_pair, AssertionLevel, DagError, DpDag, TraceError,
    TracebackConfig, Value, Verdict, Verification, VertexId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "ftrace", version, about = "Frontier-space witness traceback for DP DAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance and write it as a DAG file.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Reconstruct the canonical witness path to a sink.
    Trace {
        file: PathBuf,
        /// Sink vertex; defaults to the largest sink.
        #[arg(long)]
        sink: Option<u64>,
        #[arg(long, value_enum, default_value_t = Engine::Traceback)]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run traceback and the oracle and compare them.
    Verify {
        file: PathBuf,
        #[arg(long)]
        sink: Option<u64>,
        /// Negative control: raise one edge weight on the oracle witness by
        /// 1..=3 before tracing, chosen with this seed.
        #[arg(long, value_name = "SEED")]
        fuzz: Option<u64>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Measure traceback over every combination of parameters and seeds.
    Sweep(SweepArgs),
    /// Print size, frontier width and degree statistics of a DAG file.
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Intervals shorter than this are solved by a direct table.
    #[arg(long)]
    base_case: Option<u32>,
    /// off, decomposition or full.
    #[arg(long, default_value = "decomposition", value_parser = parse_level)]
    assert_level: AssertionLevel,
}

impl ConfigArgs {
    fn config(&self) -> Result<TracebackConfig, CliError> {
        if self.base_case == Some(0) {
            return Err(CliError::Usage("--base-case must be at least 1".into()));
        }
        Ok(TracebackConfig {
            base_case_threshold: self.base_case,
            assertion_level: self.assert_level,
            metrics_enabled: true,
        })
    }
}

fn parse_level(s: &str) -> Result<AssertionLevel, String> {
    s.parse()
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Traceback,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum BuildFamily {
    /// Alignment grid of two strings.
    Grid {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Grid restricted to the diagonal band |i - j| <= band/2.
    Banded {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        band: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Chain with edges (i, i+d) for 1 <= d <= step.
    Chain {
        #[arg(long)]
        length: u32,
        #[arg(long, default_value_t = 1)]
        step: u32,
        /// Draw weights from -4..=4; unit weights otherwise.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random layered DAG.
    Layered {
        #[arg(long)]
        layers: u32,
        #[arg(long)]
        width: u32,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lower-bound gadget with one lane per pattern bit.
    Gadget {
        #[arg(long)]
        omega: u32,
        /// Lane flags such as 0101; length must equal omega.
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 4)]
        layers: u32,
        #[arg(long, value_enum, default_value_t = Encoding::FirstActive)]
        encoding: Encoding,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct GridArgs {
    /// First string; with --b. Otherwise random DNA of lengths --m and --n.
    #[arg(long, requires = "b")]
    a: Option<String>,
    #[arg(long, requires = "a")]
    b: Option<String>,
    #[arg(long, conflicts_with = "a")]
    m: Option<usize>,
    #[arg(long, conflicts_with = "a")]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ScoringArg::Lcs)]
    scoring: ScoringArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Column)]
    order: OrderArg,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec, CliError> {
        let scoring = match self.scoring {
            ScoringArg::Lcs => Scoring::lcs(),
            ScoringArg::Alignment => Scoring::alignment(),
        };
        let order = match self.order {
            OrderArg::Row => GridOrder::RowMajor,
            OrderArg::Column => GridOrder::ColumnMajor,
        };
        let (a, b) = match (&self.a, &self.b, self.m, self.n) {
            (Some(a), Some(b), _, _) => (a.as_bytes().to_vec(), b.as_bytes().to_vec()),
            (None, None, Some(m), Some(n)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (random_dna(&mut rng, m), random_dna(&mut rng, n))
            }
            _ => return Err(CliError::Usage("give either --a and --b, or --m and --n".into())),
        };
        Ok(GridSpec::new(a, b, scoring).order(order))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScoringArg {
    /// Match 1, mismatch and gap 0.
    Lcs,
    /// Match 2, mismatch and gap -1.
    Alignment,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Row,
    Column,
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    FirstActive,
    FullPattern,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Grid,
    Banded,
    Chain,
    Layered,
    Gadget,
}

/// Lists accept `4,8,16`, inclusive ranges `10..20` and `2^10..2^16`.
#[derive(Args)]
struct SweepArgs {
    family: FamilyArg,
    /// grid: rows.
    #[arg(long)]
    m: Option<String>,
    /// grid: columns. banded: string length.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    band: Option<String>,
    /// chain: vertex count.
    #[arg(long)]
    length: Option<String>,
    #[arg(long)]
    step: Option<String>,
    /// layered and gadget.
    #[arg(long)]
    layers: Option<String>,
    #[arg(long)]
    width: Option<String>,
    #[arg(long)]
    density: Option<String>,
    #[arg(long)]
    omega: Option<String>,
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Worker threads; rayon's default when absent.
    #[arg(long)]
    threads: Option<usize>,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Unreachable(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Unreachable(_) => 4,
        }
    }
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> Self {
        match e {
            TraceError::NoWitness { .. } => CliError::Unreachable(e.to_string()),
            TraceError::NotASink { .. } | TraceError::Dag(DagError::VertexOutOfRange { .. }) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ftrace: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Build { family } => cmd_build(family).map(|_| 0),
        Command::Trace { file, sink, engine, format, config } => {
            cmd_trace(&file, sink, engine, format, &config.config()?).map(|_| 0)
        }
        Command::Verify { file, sink, fuzz, config } => cmd_verify(&file, sink, fuzz, &config.config()?),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Info { file, format } => cmd_info(&file, format).map(|_| 0),
    }
}

fn load(path: &Path) -> Result<DpDag, CliError> {
    dagfile::read_file(path).map_err(|e| match e {
        FormatError::Io(e) => io_error(path, e),
        other => io_error(path, format!("invalid DAG file: {other}")),
    })
}

fn default_sink(dag: &DpDag, sink: Option<u64>) -> u64 {
    sink.unwrap_or_else(|| *dag.sinks().last().expect("validated DAGs have a sink") as u64)
}

fn stdout() -> BufWriter<io::StdoutLock<'static>> {
    BufWriter::new(io::stdout().lock())
}

fn emit(f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
    let mut out = stdout();
    f(&mut out).and_then(|_| out.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn cmd_build(family: BuildFamily) -> Result<(), CliError> {
    let (dag, out) = match family {
        BuildFamily::Grid { grid, out } => (build_grid(&grid.spec()?)?, out),
        BuildFamily::Banded { grid, band, out } => (build_grid(&grid.spec()?.band(band))?, out),
        BuildFamily::Chain { length, step, seed, out } => {
            let weights = seed.map_or(ChainWeights::Unit, ChainWeights::Seeded);
            (build_chain(length, step, weights)?, out)
        }
        BuildFamily::Layered { layers, width, density, seed, out } => {
            (build_random_layered(LayeredSpec { layers, width, density, seed })?, out)
        }
        BuildFamily::Gadget { omega, pattern, layers, encoding, out } => {
            let pattern = GadgetSpec::parse_pattern(&pattern)?;
            if pattern.len() != omega as usize {
                return Err(CliError::Usage(format!("pattern has {} bits, omega is {omega}", pattern.len())));
            }
            let encoding = match encoding {
                Encoding::FirstActive => GadgetEncoding::FirstActive,
                Encoding::FullPattern => GadgetEncoding::FullPattern,
            };
            (build_lb_gadget(&GadgetSpec::new(pattern, layers, encoding))?, out)
        }
    };
    dagfile::write_file(&dag, &out).map_err(|e| io_error(&out, e))?;
    emit(|w| writeln!(w, "T={} omega={}", dag.vertex_count(), dag.frontier_width()))
}

#[derive(Serialize)]
struct TraceReport {
    value: i64,
    peak_live_words: usize,
    omega: usize,
    depth: u32,
    forward_passes: u64,
    vertex_visits: u64,
}

fn cmd_trace(
    path: &Path,
    sink: Option<u64>,
    engine: Engine,
    format: Format,
    config: &TracebackConfig,
) -> Result<(), CliError> {
    let dag = load(path)?;
    let sink = default_sink(&dag, sink);
    let (p, m) = match engine {
        Engine::Traceback => traceback(&dag, sink, config)?,
        Engine::Oracle => oracle_run(&dag, sink)?,
    };
    let report = TraceReport {
        value: p.value.raw(),
        peak_live_words: m.peak_live_words,
        omega: m.omega,
        depth: m.max_recursion_depth,
        forward_passes: m.forward_pass_count,
        vertex_visits: m.vertex_visit_count,
    };
    emit(|w| {
        for v in &p.vertices {
            writeln!(w, "{v}")?;
        }
        match format {
            Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report).map_err(io::Error::other)?),
            Format::Csv => write_csv(w, [&report]),
        }
    })
}

fn write_csv<'a, T: Serialize + 'a>(w: &mut dyn Write, rows: impl IntoIterator<Item = &'a T>) -> io::Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    for row in rows {
        csv.serialize(row).map_err(io::Error::other)?;
    }
    csv.flush()
}

#[derive(Serialize)]
struct Perturbation {
    from: VertexId,
    to: VertexId,
    original: i64,
    perturbed: i64,
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    fuzz: Option<Perturbation>,
    #[serde(flatten)]
    verification: Verification,
}

fn cmd_verify(path: &Path, sink: Option<u64>, fuzz: Option<u64>, config: &TracebackConfig) -> Result<u8, CliError> {
    let dag = load(path)?;
    let sink = default_sink(&dag, sink);
    let (traced, fuzz) = match fuzz {
        None => (None, None),
        Some(seed) => {
            let (d, p) = perturb(&dag, sink, seed)?;
            (Some(d), Some(p))
        }
    };
    let verification = verify_pair(traced.as_ref().unwrap_or(&dag), &dag, sink, config)?;
    let code = match verification.verdict {
        Verdict::Equal | Verdict::NoWitness => 0,
        Verdict::Mismatch => 1,
    };
    let report = VerifyReport { fuzz, verification };
    emit(|w| writeln!(w, "{}", serde_json::to_string_pretty(&report).map_err(io::Error::other)?))?;
    Ok(code)
}

/// Copy of `dag` with one edge raised by 1..=3. The edge lies on the oracle
/// witness when there is one.
fn perturb(dag: &DpDag, sink: u64, seed: u64) -> Result<(DpDag, Perturbation), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let on_path: Vec<(VertexId, VertexId)> = match VertexId::try_from(sink) {
        Ok(s) if dag.contains(s) => oracle_traceback(&oracle_solve(dag), s)
            .map(|p| p.vertices.windows(2).map(|w| (w[0], w[1])).collect())
            .unwrap_or_default(),
        _ => Vec::new(),
    };
    let pool = if on_path.is_empty() { dag.edges().map(|e| (e.from, e.to)).collect() } else { on_path };
    if pool.is_empty() {
        return Err(CliError::Usage("--fuzz needs a DAG with at least one edge".into()));
    }
    let (from, to) = pool[rng.gen_range(0..pool.len())];
    let original = dag.weight(from, to).expect("edge exists");
    let perturbed = original.extend(Value::new(rng.gen_range(1..=3)));
    let d = dag.with_weight(from, to, perturbed).expect("raised weights stay admissible");
    Ok((d, Perturbation { from, to, original: original.raw(), perturbed: perturbed.raw() }))
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8, CliError> {
    let config = args.config.config()?;
    let seeds = ranges::parse_ints(&args.seeds).map_err(CliError::Usage)?;
    let families = sweep_families(args)?;
    let jobs: Vec<(Family, u64)> = families.iter().flat_map(|&f| seeds.iter().map(move |&s| (f, s))).collect();
    let run = || jobs.par_iter().map(|(f, s)| run_row(f, *s, &config)).collect::<Vec<SweepRow>>();
    let rows = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run),
        None => run(),
    };
    match &args.csv {
        Some(path) => {
            let mut f = BufWriter::new(fs::File::create(path).map_err(|e| io_error(path, e))?);
            write_csv(&mut f, &rows).and_then(|_| f.flush()).map_err(|e| io_error(path, e))?;
        }
        None => emit(|w| write_csv(w, &rows))?,
    }
    let failed: Vec<&SweepRow> = rows.iter().filter(|r| !r.error.is_empty()).collect();
    for r in &failed {
        eprintln!("ftrace: {} ({}) seed {}: {}", r.family, r.params, r.seed, r.error);
    }
    Ok(if failed.is_empty() { 0 } else { 1 })
}

fn sweep_families(a: &SweepArgs) -> Result<Vec<Family>, CliError> {
    let ints = |name: &str, v: &Option<String>, default: Option<&str>| -> Result<Vec<u64>, CliError> {
        match v.as_deref().or(default) {
            Some(s) => ranges::parse_ints(s).map_err(|e| CliError::Usage(format!("--{name}: {e}"))),
            None => Err(CliError::Usage(format!("--{name} is required for this family"))),
        }
    };
    let u32s = |name: &str, v: &Option<String>, default: Option<&str>| -> Result<Vec<u32>, CliError> {
        ints(name, v, default)?
            .into_iter()
            .map(|x| u32::try_from(x).map_err(|_| CliError::Usage(format!("--{name}: {x} is too large"))))
            .collect()
    };
    let mut out = Vec::new();
    match a.family {
        FamilyArg::Grid => {
            for m in ints("m", &a.m, None)? {
                for n in ints("n", &a.n, None)? {
                    out.push(Family::Grid { m: m as usize, n: n as usize });
                }
            }
        }
        FamilyArg::Banded => {
            for n in ints("n", &a.n, None)? {
                for band in u32s("band", &a.band, None)? {
                    out.push(Family::Banded { n: n as usize, band });
                }
            }
        }
        FamilyArg::Chain => {
            for length in u32s("length", &a.length, None)? {
                for step in u32s("step", &a.step, Some("1"))? {
                    out.push(Family::Chain { length, step });
                }
            }
        }
        FamilyArg::Layered => {
            let densities = ranges::parse_floats(a.density.as_deref().unwrap_or("0.5"))
                .map_err(|e| CliError::Usage(format!("--density: {e}")))?;
            for layers in u32s("layers", &a.layers, None)? {
                for width in u32s("width", &a.width, None)? {
                    for &density in &densities {
                        out.push(Family::Layered { layers, width, density });
                    }
                }
            }
        }
        FamilyArg::Gadget => {
            for omega in u32s("omega", &a.omega, None)? {
                for layers in u32s("layers", &a.layers, Some("4"))? {
                    out.push(Family::Gadget { omega, layers });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct InfoReport {
    semiring: &'static str,
    vertices: u32,
    edges: usize,
    omega: usize,
    delta_max: usize,
    sources: usize,
    sinks: usize,
    max_in_degree: usize,
    max_out_degree: usize,
    mean_degree: f64,
}

fn cmd_info(path: &Path, format: Format) -> Result<(), CliError> {
    let dag = load(path)?;
    let vs = 1..=dag.vertex_count();
    let report = InfoReport {
        semiring: dag.semiring().tag(),
        vertices: dag.vertex_count(),
        edges: dag.edge_count(),
        omega: dag.frontier_width(),
        delta_max: dag.delta_max(),
        sources: dag.sources().len(),
        sinks: dag.sinks().len(),
        max_in_degree: vs.clone().map(|v| dag.in_degree(v)).max().unwrap_or(0),
        max_out_degree: vs.map(|v| dag.out_degree(v)).max().unwrap_or(0),
        mean_degree: dag.edge_count() as f64 / dag.vertex_count() as f64,
    };
    emit(|w| match format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&report).map_err(io::Error::other)?),
        Format::Csv => write_csv(w, [&report]),
    })
}
