use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nflab::cli::{parse_args, read_json_file, report, run_or_print};
use nflab::{ExperimentConfig, ExperimentKind};
use serde_json::json;

/// Markov-chain checks on a transition matrix (JSON array of rows).
#[derive(Parser)]
#[command(name = "markov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regularity and stationary distribution.
    Stationary {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Check |P^k_ij − π_j| ≤ (1 − ζ)^{k−1} for k = 1..K.
    GeoCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        zeta: f64,
        #[arg(long = "K", default_value_t = 100)]
        k_max: u64,
    },
}

fn main() -> ExitCode {
    let cli: Cli = parse_args();
    report((|| {
        let c = ExperimentConfig::new(ExperimentKind::MarkovCheck);
        let c = match cli.command {
            Command::Stationary { matrix } => c.with("matrix", read_json_file(&matrix)?),
            Command::GeoCheck { matrix, zeta, k_max } => {
                c.with("matrix", read_json_file(&matrix)?).with("zeta", json!(zeta)).with("k_max", json!(k_max))
            }
        };
        Ok(run_or_print(c, None, false))
    })())
}
