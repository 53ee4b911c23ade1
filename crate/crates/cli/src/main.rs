use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lcp_certify::commands::EXIT_ERROR;
use lcp_certify::{run, Command, Format, RunConfig, TheoremChoice};

/// Error bounds for linear complementarity problems with Nekrasov and
/// B-Nekrasov matrices.
#[derive(Debug, Parser)]
#[command(name = "lcp-certify", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Matrix file (plain `n` + entries, or CSV); entries may be fractions `p/q`.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
    /// Right-hand side `q` for `lcp`.
    #[arg(long, value_name = "FILE")]
    q: Option<PathBuf>,
    /// Epsilon for the parameterized bounds.
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Only report this bound (`bound` command).
    #[arg(long, value_enum)]
    theorem: Option<TheoremChoice>,
    /// Interior grid points for `sweep`.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
    grid: u64,
    /// Interior samples for the oracle in `verify`.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Lemma-suite trials (`verify`, default 1000) or trial points (`lcp`, default 100).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format; defaults to csv for `sweep` and json otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        command: cli.command,
        matrix_path: cli.matrix,
        q_path: cli.q,
        epsilon: cli.epsilon,
        theorem: cli.theorem,
        grid: cli.grid as usize,
        samples: cli.samples,
        trials: cli.trials,
        seed: cli.seed,
        format: cli.format,
    };
    match run(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("lcp-certify: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
