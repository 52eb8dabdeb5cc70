use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nflab::cli::{parse_args, read_json_file, report, run_or_print};
use nflab::{ExperimentConfig, ExperimentKind};
use serde_json::json;

/// Finite no-free-lunch experiments.
#[derive(Parser)]
#[command(name = "nfl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare y-trace multisets of policies over the full space.
    Verify {
        #[command(flatten)]
        space: Space,
        /// Comma-separated policies (ascending, descending, greedy, shuffle[:S], perm:…).
        #[arg(long, value_delimiter = ',')]
        policies: Vec<String>,
        /// Check every k from 1 to --k.
        #[arg(long)]
        all_k: bool,
        #[arg(long)]
        cap: Option<u64>,
        #[command(flatten)]
        run: Run,
    },
    /// Mean best-so-far of two policies over a subset read from a JSON file.
    Freelunch {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        subset: PathBuf,
        #[arg(long, value_delimiter = ',')]
        policies: Vec<String>,
        #[command(flatten)]
        run: Run,
    },
    /// Ascending sweep against a revisiting policy.
    Revisit {
        #[arg(long)]
        nx: Option<u64>,
        #[arg(long)]
        ny: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[command(flatten)]
        run: Run,
    },
}

#[derive(Args)]
struct Space {
    #[arg(long)]
    nx: u64,
    #[arg(long)]
    ny: u64,
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Args)]
struct Run {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write artifacts and a manifest here instead of printing.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

fn space(c: ExperimentConfig, s: &Space) -> ExperimentConfig {
    let c = c.with("nx", json!(s.nx)).with("ny", json!(s.ny));
    match s.k {
        Some(k) => c.with("k", json!(k)),
        None => c,
    }
}

fn main() -> ExitCode {
    let cli: Cli = parse_args();
    report((|| {
        let (mut config, run) = match cli.command {
            Command::Verify { space: s, policies, all_k, cap, run } => {
                let mut c = space(ExperimentConfig::new(ExperimentKind::NflVerify), &s).with("all_k", json!(all_k));
                if !policies.is_empty() {
                    c = c.with("policies", json!(policies));
                }
                if let Some(cap) = cap {
                    c = c.with("cap", json!(cap));
                }
                (c, run)
            }
            Command::Freelunch { space: s, subset, policies, run } => {
                let mut c = space(ExperimentConfig::new(ExperimentKind::NflFreelunch), &s).with("subset", read_json_file(&subset)?);
                if !policies.is_empty() {
                    c = c.with("policies", json!(policies));
                }
                (c, run)
            }
            Command::Revisit { nx, ny, k, run } => {
                let mut c = ExperimentConfig::new(ExperimentKind::RevisitDemo);
                for (key, v) in [("nx", nx), ("ny", ny), ("k", k)] {
                    if let Some(v) = v {
                        c = c.with(key, json!(v));
                    }
                }
                (c, run)
            }
        };
        config.seed = run.seed;
        Ok(run_or_print(config, run.out, run.quiet))
    })())
}
