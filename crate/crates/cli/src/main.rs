use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::CliError;

#[derive(Debug, Parser)]
#[command(name = "sinhgordon", version, about = "Sinh-Gordon and Kazdan-Warner equations on weighted graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every random choice (start points, random suites).
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Residual tolerance; overrides the problem file.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Newton iteration cap; overrides the problem file.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Search radius for `enumerate` and `sweep`.
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Number of multistart points.
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; `csv` is accepted by `sweep` and `enumerate`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Damped Newton from u = 0 or from `--start`.
    Solve {
        input: PathBuf,
        /// JSON array of values, or an object mapping vertex ids to values.
        #[arg(long)]
        start: Option<PathBuf>,
    },
    /// All solutions found by multistart Newton inside the search ball.
    Enumerate { input: PathBuf },
    /// Degree by the closed-form tables and by the signed count of zeros.
    Degree {
        input: PathBuf,
        /// Skip the numeric count.
        #[arg(long)]
        formula_only: bool,
    },
    /// Solution counts along a grid of c, with a threshold estimate.
    Sweep {
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Built-in instances checked against their known answers.
    Examples {
        /// case1, case2, case3, case4 or kw-appendix.
        name: String,
        /// Value of c for the two-vertex cases.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c: f64,
    },
    /// Graph invariants on random functions.
    Verify {
        /// Graph JSON; without it a random suite of graphs is used.
        input: Option<PathBuf>,
        /// Trials per check.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Solve { input, start } => commands::solve(g, &input, start.as_deref()),
        Command::Enumerate { input } => commands::enumerate(g, &input),
        Command::Degree { input, formula_only } => commands::degree(g, &input, formula_only),
        Command::Sweep { input, from, to, steps } => commands::sweep(g, &input, from, to, steps),
        Command::Examples { name, c } => commands::examples(g, &name, c),
        Command::Verify { input, trials } => commands::verify(g, input.as_deref(), trials),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { output::EXIT_INPUT } else { output::EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
