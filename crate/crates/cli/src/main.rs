//! `astar`: weighted seminorms, numerical ranges, orthogonality and
//! parallelism from JSON problem files.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input error, 3 math-domain
//! error, 4 I/O error.

mod commands;
mod problem;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Failure;

#[derive(Parser)]
#[command(name = "astar", version, about = "Weighted (a,lambda)-norms on M_n(C)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct SolverArgs {
    /// Overrides `lambda` from the problem file.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Random starts of the multistart ascent.
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// |x|_{a,lambda} with a witness state.
    Norm {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// The a-operator seminorm |x|_a.
    ANorm { file: PathBuf },
    /// The a-numerical radius v_a(x).
    Numradius {
        file: PathBuf,
        #[arg(long, default_value_t = 720)]
        angles: usize,
    },
    /// Support points of the a-numerical range as CSV.
    Range {
        file: PathBuf,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decides x _|_ y.
    Ortho {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Decision tolerance on normalized inputs.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Decides x || y.
    Parallel {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Decision tolerance on normalized inputs.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluates x || 1, v_a(x) = |x|_a and x || x^#.
    Normaloid {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Runs the acceptance suite and prints a pass/fail table.
    VerifyPaper {
        /// Also write the table here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Replaces every criterion tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated criterion ids to run, e.g. `1,6`.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<usize>>,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("ASTAR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("ASTAR_THREADS must be a non-negative integer, got {raw:?}")))?;
    // 0 means serial
    rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot configure threads: {e}")))
}

fn dispatch(cli: Cli) -> Result<String, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Norm { file, solver } => commands::norm(&file, &solver),
        Command::ANorm { file } => commands::a_norm(&file),
        Command::Numradius { file, angles } => commands::numradius(&file, angles),
        Command::Range { file, angles, out } => commands::range(&file, angles, out.as_deref()),
        Command::Ortho { file, solver, tol } => commands::ortho(&file, &solver, tol),
        Command::Parallel { file, solver, tol } => commands::parallel(&file, &solver, tol),
        Command::Normaloid { file, solver, tol } => commands::normaloid(&file, &solver, tol),
        Command::VerifyPaper {
            report,
            tol,
            seed,
            criteria,
        } => commands::verify_paper(report.as_deref(), tol, seed, criteria),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Failure::Verification(stdout) = &failure {
                print!("{stdout}");
            }
            eprintln!("astar: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
