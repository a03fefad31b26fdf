//! The `tanglekit` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tanglekit::connectivity::{verify_axioms, DEFAULT_EXHAUSTIVE_BOUND};
use tanglekit::decomposition::{
    canonical_decomposition, directed_decomposition, refine_single_tangle, verify_directed, verify_tangle_decomposition,
    VerificationReport,
};
use tanglekit::io::{self, DecompositionJson, FnKind, Instance};
use tanglekit::oracles;
use tanglekit::{ConnectivityOracle, Engine, TangleDataStructure, TangleMembership};

pub const DEFAULT_MAX_EXHAUSTIVE: usize = 16;
pub const MAX_EXHAUSTIVE_ENV: &str = "TANGLEKIT_MAX_EXHAUSTIVE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] tanglekit::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Verification(_) => 2,
            CliError::Lib(tanglekit::Error::Parse { .. }) => 3,
            CliError::Lib(tanglekit::Error::SizeGuard { .. } | tanglekit::Error::Unsupported(_)) => 4,
            CliError::Lib(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "tanglekit", version, about = "Tangles and canonical tree decompositions of connectivity functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Connectivity function: edge-boundary, vertex-cut, cut-rank or matroid.
    /// Defaults to edge-boundary for graphs and matroid for matrices.
    #[arg(long = "fn", global = true, value_name = "KIND")]
    pub function: Option<String>,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print oracle call counts to stderr; runs single-threaded so the
    /// counts are reproducible.
    #[arg(long, global = true)]
    pub stats: bool,
    /// Refuse ground sets larger than this.
    #[arg(long, global = true, env = MAX_EXHAUSTIVE_ENV, default_value_t = DEFAULT_MAX_EXHAUSTIVE)]
    pub max_exhaustive: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tangle census per order.
    Tangles {
        #[arg(long)]
        order: u32,
        instance: PathBuf,
    },
    /// Maximum tangle order, which equals the branch width.
    Branchwidth {
        /// Cross-check against exhaustive branch decompositions.
        #[arg(long)]
        brute: bool,
        instance: PathBuf,
    },
    /// Canonical tree decomposition as JSON.
    Decompose {
        #[arg(long)]
        order: u32,
        /// Refine until every node holds one maximal tangle of its contraction.
        #[arg(long)]
        refined: bool,
        /// Also write a Graphviz file.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        instance: PathBuf,
    },
    /// Directed decomposition rooted at a maximal tangle, as JSON.
    Directed {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        root_index: usize,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        instance: PathBuf,
    },
    /// Check a decomposition JSON against an instance.
    Verify { decomposition: PathBuf, instance: PathBuf },
    /// Axioms, agreement with the brute-force oracles and canonicity trials.
    Selfcheck {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        instance: PathBuf,
    },
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(global: &Global, path: &Path) -> CliResult<Arc<ConnectivityOracle>> {
    let inst: Instance = io::parse_instance(&read(path)?)?;
    let kind = match &global.function {
        Some(f) => f.parse::<FnKind>().map_err(|e| CliError::Usage(e.to_string()))?,
        None => inst.default_fn(),
    };
    let k = inst.oracle(kind)?;
    if k.n() > global.max_exhaustive {
        return Err(tanglekit::Error::SizeGuard { guard: "max-exhaustive", actual: k.n(), limit: global.max_exhaustive }.into());
    }
    Ok(Arc::new(k))
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TangleEntry {
    index: usize,
    order: u32,
    truncation: Option<usize>,
    signature: Vec<Vec<usize>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CensusLevel {
    order: u32,
    count: usize,
    tangles: Vec<TangleEntry>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Census {
    ground_size: usize,
    order: u32,
    levels: Vec<CensusLevel>,
}

fn census(ds: &TangleDataStructure) -> CliResult<Census> {
    let mut levels = Vec::new();
    for o in 0..=ds.k() {
        let mut tangles = Vec::new();
        for i in ds.indices_of_order(o) {
            tangles.push(TangleEntry {
                index: i,
                order: o,
                truncation: if o == 0 { None } else { Some(ds.truncation(i, o - 1)?) },
                signature: ds.tangle(i)?.signature().iter().map(|x| x.to_vec()).collect(),
            });
        }
        levels.push(CensusLevel { order: o, count: tangles.len(), tangles });
    }
    Ok(Census { ground_size: ds.engine().oracle().n(), order: ds.k(), levels })
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn report_text(rep: &VerificationReport) -> String {
    if rep.passed() {
        return format!("ok: {}\n", rep.checked.join(", "));
    }
    rep.violations.iter().map(|v| format!("{}: {}\n", v.condition, v.detail)).collect()
}

fn execute(cli: &Cli, out: &mut Vec<u8>, err: &mut Vec<u8>) -> CliResult<()> {
    let g = &cli.global;
    let mut engines: Vec<Arc<Engine>> = Vec::new();
    let mut track = |e: &Arc<Engine>| engines.push(Arc::clone(e));
    match &cli.command {
        Command::Tangles { order, instance } => {
            let k = load(g, instance)?;
            let engine = Engine::new(k);
            track(&engine);
            let ds = TangleDataStructure::build(Arc::clone(&engine), *order)?;
            emit(out, &pretty(&census(&ds)?))?;
        }
        Command::Branchwidth { brute, instance } => {
            let k = load(g, instance)?;
            let engine = Engine::new(Arc::clone(&k));
            track(&engine);
            let bw = engine.max_tangle_order()?;
            emit(out, &format!("{bw}\n"))?;
            if *brute {
                let b = oracles::brute_force_branch_width(&k)?;
                emit(out, &format!("brute force: {b}\n"))?;
                if b != bw {
                    return Err(CliError::Verification(format!("maximum tangle order {bw}, branch width {b}")));
                }
            }
        }
        Command::Decompose { order, refined, dot, instance } => {
            let k = load(g, instance)?;
            let engine = Engine::new(Arc::clone(&k));
            track(&engine);
            let doc = if *refined {
                let ds = TangleDataStructure::build(Arc::clone(&engine), *order)?;
                let td = refine_single_tangle(&k, *order)?;
                io::refined_json(&ds, &td, *order)?
            } else {
                io::canonical_json(&canonical_decomposition(&engine, *order)?)?
            };
            emit(out, &doc.to_pretty())?;
            if let Some(p) = dot {
                write_file(p, &io::to_dot(&doc, &k))?;
            }
        }
        Command::Directed { order, root_index, dot, instance } => {
            let k = load(g, instance)?;
            let engine = Engine::new(Arc::clone(&k));
            track(&engine);
            let doc = io::directed_json(&directed_decomposition(&engine, *order, *root_index)?)?;
            emit(out, &doc.to_pretty())?;
            if let Some(p) = dot {
                write_file(p, &io::to_dot(&doc, &k))?;
            }
        }
        Command::Verify { decomposition, instance } => {
            let doc = DecompositionJson::parse(&read(decomposition)?)?;
            let k = load(g, instance)?;
            let engine = Engine::new(k);
            track(&engine);
            let ds = TangleDataStructure::build(Arc::clone(&engine), doc.order)?;
            let rep = if doc.variant == "directed" {
                verify_directed(&io::directed_from_json(&ds, &doc)?)?
            } else {
                verify_tangle_decomposition(&io::tangle_decomposition_from_json(&ds, &doc)?)?
            };
            emit(out, &report_text(&rep))?;
            if !rep.passed() {
                return Err(CliError::Verification(format!("{} violation(s)", rep.violations.len())));
            }
        }
        Command::Selfcheck { trials, instance } => {
            let k = load(g, instance)?;
            let engine = Engine::new(Arc::clone(&k));
            track(&engine);
            let mut failures = 0;
            let mut line = |out: &mut dyn Write, ok: bool, what: String| -> CliResult<()> {
                failures += !ok as usize;
                emit(out, &format!("{} {what}\n", if ok { "ok  " } else { "FAIL" }))
            };
            let ax = verify_axioms(&k, DEFAULT_EXHAUSTIVE_BOUND)?;
            let found = ax.violation.as_ref().map_or("no violation".to_string(), |v| format!("{v:?}"));
            line(out, ax.passed(), format!("axioms ({:?}): {found}", ax.mode))?;
            let top = engine.max_tangle_order()?;
            if k.n() <= oracles::BRANCH_WIDTH_LIMIT {
                let b = oracles::brute_force_branch_width(&k)?;
                line(out, b == top, format!("maximum tangle order {top}, brute-force branch width {b}"))?;
            }
            let ds = TangleDataStructure::build(Arc::clone(&engine), top)?;
            if k.n() <= oracles::TANGLE_SEARCH_LIMIT {
                for o in 0..=top {
                    let brute = oracles::brute_force_tangles(&k, o)?.len();
                    let ours = ds.indices_of_order(o).len();
                    line(out, brute == ours, format!("order {o}: {ours} tangles, brute force {brute}"))?;
                }
                for i in 0..ds.len() {
                    for j in 0..ds.len() {
                        if i != j {
                            let (ti, tj) = (ds.tangle(i)?, ds.tangle(j)?);
                            let ei = tanglekit::ExplicitTangle::new(ti.order(), oracles::tangle_members(&k, &ti));
                            let ej = tanglekit::ExplicitTangle::new(tj.order(), oracles::tangle_members(&k, &tj));
                            let want = oracles::brute_force_tangle_separation(&k, &ei, &ej)?;
                            if ds.separation(i, j)? != want {
                                line(out, false, format!("separation({i}, {j}) differs from brute force"))?;
                            }
                        }
                    }
                }
            }
            let ttd = canonical_decomposition(&engine, top)?;
            let rep = verify_tangle_decomposition(&ttd)?;
            line(out, rep.passed(), format!("canonical decomposition at order {top}: {}", report_text(&rep).trim_end()))?;
            let c = oracles::canonicity_harness(&k, top, *trials, g.seed, true)?;
            line(
                out,
                c.passed(),
                format!("canonicity: {} trials, {} failures, {} index changes", c.trials, c.failures.len(), c.index_changes),
            )?;
            if failures > 0 {
                return Err(CliError::Verification(format!("{failures} check(s) failed")));
            }
        }
    }
    if g.stats {
        for e in &engines {
            let s = e.stats();
            let _ = writeln!(
                err,
                "oracle calls: {}, decisions: {}, decision cache hits: {}",
                s.oracle_calls, s.decisions, s.decision_cache_hits
            );
        }
    }
    Ok(())
}

/// Run with the given arguments (the first is the program name) and return
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let (mut bout, mut berr) = (Vec::new(), Vec::new());
    let result = if cli.global.stats {
        match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut bout, &mut berr)),
            Err(e) => Err(CliError::Usage(format!("cannot start a worker pool: {e}"))),
        }
    } else {
        execute(&cli, &mut bout, &mut berr)
    };
    let _ = out.write_all(&bout);
    let _ = err.write_all(&berr);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
