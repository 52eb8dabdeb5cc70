use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nflab::cli::run_or_print;
use nflab::cli::parse_args;
use nflab::{ExperimentConfig, ExperimentKind};
use serde_json::json;

/// Closed-form convergence bounds.
#[derive(Parser)]
#[command(name = "bounds", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ζ = 2^{nL} μ₁^{n₁L} μ₂^{(n−n₁)L}.
    Zeta {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long = "L")]
        length: u64,
        #[arg(long)]
        mu1: f64,
        #[arg(long)]
        mu2: f64,
    },
    /// GA iteration bound t(ζ).
    GaT {
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long = "L")]
        length: u64,
        #[arg(long)]
        n: u64,
    },
    /// Annealing temperature A / ln(k + 1).
    SaTemp {
        #[arg(long = "A")]
        a: f64,
        #[arg(long)]
        k: u64,
    },
}

fn main() -> ExitCode {
    let cli: Cli = parse_args();
    let c = ExperimentConfig::new(ExperimentKind::BoundsCalc);
    let c = match cli.command {
        Command::Zeta { n, n1, length, mu1, mu2 } => c
            .with("query", json!("zeta"))
            .with("n", json!(n))
            .with("n1", json!(n1))
            .with("length", json!(length))
            .with("mu1", json!(mu1))
            .with("mu2", json!(mu2)),
        Command::GaT { zeta, mu, length, n } => c
            .with("query", json!("ga-t"))
            .with("zeta", json!(zeta))
            .with("mu", json!(mu))
            .with("length", json!(length))
            .with("n", json!(n)),
        Command::SaTemp { a, k } => c.with("query", json!("sa-temp")).with("a", json!(a)).with("k", json!(k)),
    };
    run_or_print(c, None, false)
}
