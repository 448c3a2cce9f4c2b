//! The `ecss` command line.
//!
//! Output is `key=value` lines on stdout. Exit codes: 0 ok, 1 usage or
//! parse error, 2 infeasible instance, 3 verification failure, 4 ratio
//! violation.

mod bench;
mod commands;
mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ecss_core::bounds::{ExactLimits, DEFAULT_EXACT_LIMIT};
use ecss_core::solver::{DeletionOrder, SolverConfig};

pub use manifest::RunManifest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_RATIO: i32 = 4;

/// Environment variable capping each exact search, in milliseconds.
pub const BUDGET_ENV: &str = "EC2_EXACT_BUDGET_MS";

#[derive(Debug, Parser)]
#[command(
    name = "ecss",
    version,
    about = "Minimum 2-edge-connected spanning subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance and print its report
    Solve(SolveArgs),
    /// Check a solution file against an instance
    Verify(VerifyArgs),
    /// Solve many instances and summarize the ratios
    Bench(BenchArgs),
    /// Generate instances
    #[command(subcommand)]
    Gen(GenCommand),
    /// Exact 2-edge- and 2-vertex-connected optima
    Exact(ExactArgs),
    /// Value of the cut LP relaxation
    Lp(LpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Ascending,
    Shuffle,
}

#[derive(Debug, Clone, Args)]
struct SolverFlags {
    /// Edge order for reverse-delete scans
    #[arg(long, value_enum, default_value_t = OrderArg::Ascending)]
    order: OrderArg,
    /// Seed for --order shuffle
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compute exact optima and check the 9/7 ratio
    #[arg(long)]
    exact: bool,
    /// Largest n handed to the exact search
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    /// Compute the cut LP lower bound
    #[arg(long)]
    lp: bool,
    /// Human-readable output
    #[arg(long)]
    pretty: bool,
    /// Append wall-clock timings (makes output run-dependent)
    #[arg(long)]
    timings: bool,
}

impl SolverFlags {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            deletion_order: match self.order {
                OrderArg::Ascending => DeletionOrder::AscendingEdgeId,
                OrderArg::Shuffle => DeletionOrder::SeededShuffle(self.seed),
            },
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    flags: SolverFlags,
    /// Write the solver trace here
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write F here as an instance file
    #[arg(long)]
    emit_f: Option<PathBuf>,
    /// Write F̄ here as an instance file
    #[arg(long)]
    emit_fbar: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Ec,
    Vc,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Ec)]
    mode: Mode,
    /// Also check a trace file written by `solve --trace`
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Directory searched recursively for *.ec2 files
    dir: Option<PathBuf>,
    /// Seeded corpus FAMILY:N_MIN:N_MAX:SEED:COUNT, repeatable
    #[arg(long = "corpus")]
    corpora: Vec<String>,
    /// All labeled 2-connected graphs on N vertices, repeatable
    #[arg(long = "enumerate")]
    enumerate: Vec<usize>,
    /// Keep every K-th enumerated graph
    #[arg(long, default_value_t = 1)]
    sample: usize,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print only the summary
    #[arg(long)]
    summary_only: bool,
    #[command(flatten)]
    flags: SolverFlags,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Cycle 0..n-1 plus c seeded chords
    CycleChords {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded open-ear construction
    Ear {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded corpus as <out>/<family>/<seed>-<index>.ec2
    Corpus {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ExactArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
}

#[derive(Debug, Args)]
struct LpArgs {
    instance: PathBuf,
}

/// A failed command: exit code plus a one-line message for stderr.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(EXIT_USAGE, message)
    }
}

pub(crate) type CmdResult = Result<i32, Failure>;

/// Exact-search limits from `--exact-limit` and [`BUDGET_ENV`].
pub(crate) fn exact_limits(max_n: usize) -> Result<ExactLimits, Failure> {
    let budget = match std::env::var(BUDGET_ENV) {
        Ok(v) => Some(Duration::from_millis(v.trim().parse().map_err(|_| {
            Failure::usage(format!("{BUDGET_ENV} must be milliseconds, got {v:?}"))
        })?)),
        Err(_) => None,
    };
    Ok(ExactLimits { max_n, budget })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Regular output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => commands::solve(&a, out),
        Command::Verify(a) => commands::verify(&a, out),
        Command::Bench(a) => bench::bench(&a, out),
        Command::Gen(g) => commands::gen(&g, out),
        Command::Exact(a) => commands::exact(&a, out),
        Command::Lp(a) => commands::lp(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
