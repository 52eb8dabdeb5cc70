use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nflab::cli::{parse_args, parse_kv, run_or_print};
use nflab::{ExperimentConfig, ExperimentKind};
use serde_json::{json, Value};

/// Seeded metaheuristic runs.
#[derive(Parser)]
#[command(name = "opt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the best-so-far CSV (or write CSV and JSON summary with --out).
    Run {
        /// pso, fa, sa or ga.
        #[arg(long)]
        algo: String,
        /// sphere-D, onemax-L or needle-L.
        #[arg(long)]
        objective: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        iters: Option<u64>,
        /// Algorithm parameter, `key=value`.
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, Value)>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    let cli: Cli = parse_args();
    let Command::Run { algo, objective, seed, iters, params, out, quiet } = cli.command;
    let mut c = ExperimentConfig::new(ExperimentKind::OptRun).with("algo", json!(algo)).with("objective", json!(objective));
    if let Some(n) = iters {
        c = c.with("iters", json!(n));
    }
    c.parameters.extend(params);
    c.seed = seed;
    run_or_print(c, out, quiet)
}
