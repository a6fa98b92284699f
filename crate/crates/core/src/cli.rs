//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or disagreement, 2 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arborescence::{parents_in_original_labels, WeightedDigraph};
use crate::error::Error;
use crate::fuzz::{fuzz, Fault};
use crate::identities::{generic_matrix, generic_ring, Theorem};
use crate::io::{parse_graph, parse_matrix};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::verify::{self, Mode, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "condensation-kit",
    version,
    about = "Exact determinants, Chio condensation, and arborescence counting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact determinant of a matrix file.
    Det {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Chio)]
        algo: Algo,
        /// int or mod:<m>
        #[arg(long, default_value = "int")]
        ring: String,
    },
    /// One condensation step: print the condensed matrix and the pivot factor.
    Condense {
        /// Matrix file; omit with `--ring poly --n N` for the generic matrix.
        file: Option<PathBuf>,
        /// int, mod:<m> or poly
        #[arg(long, default_value = "int")]
        ring: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check an identity symbolically or on seeded random instances.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ring for random mode: int or mod:<m>.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Count or list spanning arborescences of a weighted digraph.
    Arborescences {
        #[command(subcommand)]
        action: ArbAction,
    },
    /// Differential fuzzing of the determinant and matrix-tree engines.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ArbAction {
    Count(GraphArgs),
    Enumerate(GraphArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Root vertex (default: n).
    #[arg(long)]
    root: Option<usize>,
    #[arg(long, default_value = "int")]
    ring: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Algo {
    Leibniz,
    Chio,
    Both,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum TheoremArg {
    Chio,
    ChioGen,
    Supergen,
    Mtt,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Theorem {
        match t {
            TheoremArg::Chio => Theorem::Chio,
            TheoremArg::ChioGen => Theorem::ChioGen,
            TheoremArg::Supergen => Theorem::Supergen,
            TheoremArg::Mtt => Theorem::Mtt,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Random,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => EXIT_FAIL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: msg.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Det { file, algo, ring } => cmd_det(&file, algo, &ring, out),
        Command::Condense { file, ring, n } => cmd_condense(file.as_deref(), &ring, n, out),
        Command::Verify {
            theorem,
            n,
            mode,
            trials,
            seed,
            ring,
            json,
        } => {
            let mode = match mode {
                ModeArg::Symbolic => Mode::Symbolic,
                ModeArg::Random => Mode::Random,
            };
            cmd_verify(
                theorem.into(),
                n,
                mode,
                trials,
                seed,
                ring.as_deref(),
                json,
                out,
            )
        }
        Command::Arborescences { action } => match action {
            ArbAction::Count(g) => cmd_count(&g, out),
            ArbAction::Enumerate(g) => cmd_enumerate(&g, out),
        },
        Command::Fuzz {
            seed,
            cases,
            json,
            inject_fault,
        } => cmd_fuzz(seed, cases, json, inject_fault, out),
    }
}

fn emit(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), Failure> {
    out.write_fmt(text)
        .and_then(|_| out.write_all(b"\n"))
        .map_err(|e| Failure {
            code: EXIT_FAIL,
            msg: format!("write failed: {e}"),
        })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn parse_ring(s: &str) -> Result<Ring, Failure> {
    Ok(s.parse::<Ring>()?)
}

fn numeric_ring(s: &str) -> Result<Ring, Failure> {
    let ring = parse_ring(s)?;
    if matches!(ring, Ring::Polynomial(_)) {
        return Err(input_error("--ring poly is only valid for symbolic paths"));
    }
    Ok(ring)
}

fn cmd_det(file: &Path, algo: Algo, ring: &str, out: &mut dyn Write) -> CmdResult {
    let ring = numeric_ring(ring)?;
    let m = parse_matrix(&read(file)?, &ring)?;
    match algo {
        Algo::Leibniz => emit(out, format_args!("{}", m.leibniz_det()?))?,
        Algo::Chio => emit(out, format_args!("{}", m.chio_det()?))?,
        Algo::Both => {
            let l = m.leibniz_det()?;
            let c = m.chio_det()?;
            emit(out, format_args!("leibniz {l}"))?;
            emit(out, format_args!("chio {c}"))?;
            if l != c {
                emit(out, format_args!("MISMATCH"))?;
                return Ok(EXIT_FAIL);
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_condense(
    file: Option<&Path>,
    ring: &str,
    n: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    let ring = parse_ring(ring)?;
    let symbolic = matches!(ring, Ring::Polynomial(_));
    let m = match (file, symbolic, n) {
        (Some(path), false, None) => parse_matrix(&read(path)?, &ring)?,
        (None, true, Some(n)) => {
            let bound = verify::symbolic_bound(Theorem::Chio);
            if n > bound {
                return Err(Error::BoundExceeded { n, bound }.into());
            }
            generic_matrix(&generic_ring(n, &["x"]), "x", n)?
        }
        _ => {
            return Err(input_error(
                "give a matrix FILE, or --ring poly --n N for the generic matrix",
            ))
        }
    };
    let (condensed, factor) = m.chio_condense()?;
    if symbolic {
        print_entries(&condensed, out)?;
    } else {
        out.write_all(condensed.to_string().as_bytes())
            .map_err(|e| input_error(e.to_string()))?;
    }
    emit(out, format_args!("factor: {factor}"))?;
    Ok(EXIT_OK)
}

fn print_entries(m: &Matrix, out: &mut dyn Write) -> Result<(), Failure> {
    emit(out, format_args!("{} {}", m.rows(), m.cols()))?;
    for i in 1..=m.rows() {
        for j in 1..=m.cols() {
            emit(out, format_args!("[{i},{j}] {}", m.get(i, j)))?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    theorem: Theorem,
    n: usize,
    mode: Mode,
    trials: usize,
    seed: u64,
    ring: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let ring = match (mode, ring) {
        (_, None) => Ring::Integers,
        (Mode::Random, Some(r)) => numeric_ring(r)?,
        (Mode::Symbolic, Some(r)) => match parse_ring(r)? {
            Ring::Polynomial(_) => Ring::Integers,
            _ => return Err(input_error("symbolic mode works over the polynomial ring")),
        },
    };
    let cfg = VerifyConfig {
        theorem,
        n,
        mode,
        ring,
        trials,
        seed,
    };
    let reports = verify::run(&cfg)?;
    for (k, r) in reports.iter().enumerate() {
        if json {
            emit(out, format_args!("{}", r.to_json(k)))?;
        } else {
            emit(out, format_args!("{r}"))?;
        }
    }
    Ok(if reports.iter().all(|r| r.verdict) {
        EXIT_OK
    } else {
        EXIT_FAIL
    })
}

fn load_graph(args: &GraphArgs) -> Result<(WeightedDigraph, usize), Failure> {
    let ring = numeric_ring(&args.ring)?;
    let g = parse_graph(&read(&args.graph)?, &ring)?;
    let root = args.root.unwrap_or(g.n());
    Ok((g.relabel_root(root)?, root))
}

fn cmd_count(args: &GraphArgs, out: &mut dyn Write) -> CmdResult {
    let (g, _) = load_graph(args)?;
    emit(out, format_args!("{}", g.count_arborescences()?))?;
    Ok(EXIT_OK)
}

fn cmd_enumerate(args: &GraphArgs, out: &mut dyn Write) -> CmdResult {
    let (g, root) = load_graph(args)?;
    for (tree, w) in g.enumerate_arborescences()? {
        let parents: Vec<String> = parents_in_original_labels(&tree, root)
            .into_iter()
            .map(|(_, p)| p.to_string())
            .collect();
        let list = if parents.is_empty() {
            "-".to_string()
        } else {
            parents.join(",")
        };
        emit(out, format_args!("tree: {list} weight: {w}"))?;
    }
    Ok(EXIT_OK)
}

fn cmd_fuzz(seed: u64, cases: usize, json: bool, inject: bool, out: &mut dyn Write) -> CmdResult {
    let fault = if inject { Fault::OffByOne } else { Fault::None };
    let summary = fuzz(seed, cases, fault)?;
    for f in &summary.failures {
        if json {
            let j = serde_json::json!({
                "case": f.case,
                "ring": f.ring,
                "n": f.n,
                "check": f.check,
                "engine": f.engine,
                "oracle": f.oracle,
            });
            emit(out, format_args!("{j}"))?;
        } else {
            emit(out, format_args!("FAIL {f}"))?;
        }
    }
    emit(
        out,
        format_args!(
            "fuzz: {} cases, {} failures",
            summary.cases,
            summary.failures.len()
        ),
    )?;
    Ok(if summary.passed() { EXIT_OK } else { EXIT_FAIL })
}
