use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nflab::cli::{parse_args, print_json, report, run_or_print};
use nflab::experiments::pso_eigen_report;
use nflab::{ExperimentConfig, ExperimentKind};
use serde_json::{json, Value};

/// Swarm dynamics: PSO eigenvalues, iterated maps and invariant densities.
#[derive(Parser)]
#[command(name = "dyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and regime of the reduced PSO system.
    PsoEig {
        #[arg(long)]
        gamma: f64,
    },
    /// One orbit of a 1-D map (JSON summary; CSV with --out).
    Orbit {
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        param: f64,
        #[arg(long)]
        u0: Option<f64>,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        transient: Option<u64>,
        #[arg(long)]
        gamma_scale: Option<f64>,
        #[command(flatten)]
        out: Out,
    },
    /// Bifurcation data as CSV `param,iterate_index,value`.
    Scan {
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        u0: Option<f64>,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        transient: Option<u64>,
        #[arg(long)]
        keep: Option<u64>,
        #[arg(long)]
        gamma_scale: Option<f64>,
        #[command(flatten)]
        out: Out,
    },
    /// Logistic-map histogram as CSV `bin_lo,bin_hi,count`.
    Density {
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        u0: Option<f64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        bins: Option<u64>,
        #[arg(long)]
        transient: Option<u64>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Out {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

fn with_opts(mut c: ExperimentConfig, opts: &[(&str, Option<Value>)]) -> ExperimentConfig {
    for (k, v) in opts {
        if let Some(v) = v {
            c = c.with(k, v.clone());
        }
    }
    c
}

fn j<T: serde::Serialize>(v: Option<T>) -> Option<Value> {
    v.map(|v| json!(v))
}

fn main() -> ExitCode {
    let cli: Cli = parse_args();
    match cli.command {
        Command::PsoEig { gamma } => report(pso_eigen_report(gamma).map(|v| print_json(&v))),
        Command::Orbit { map, param, u0, steps, transient, gamma_scale, out } => {
            let c = with_opts(
                ExperimentConfig::new(ExperimentKind::DynOrbit).with("param", json!(param)),
                &[("map", j(map)), ("u0", j(u0)), ("steps", j(steps)), ("transient", j(transient)), ("gamma_scale", j(gamma_scale))],
            );
            run_or_print(c, out.out, out.quiet)
        }
        Command::Scan { map, lo, hi, samples, u0, steps, transient, keep, gamma_scale, out } => {
            let c = with_opts(
                ExperimentConfig::new(ExperimentKind::DynScan).with("lo", json!(lo)).with("hi", json!(hi)),
                &[
                    ("map", j(map)),
                    ("samples", j(samples)),
                    ("u0", j(u0)),
                    ("steps", j(steps)),
                    ("transient", j(transient)),
                    ("keep", j(keep)),
                    ("gamma_scale", j(gamma_scale)),
                ],
            );
            run_or_print(c, out.out, out.quiet)
        }
        Command::Density { lambda, u0, n, bins, transient, out } => {
            let c = with_opts(
                ExperimentConfig::new(ExperimentKind::DynDensity),
                &[("lambda", j(lambda)), ("u0", j(u0)), ("n", j(n)), ("bins", j(bins)), ("transient", j(transient))],
            );
            run_or_print(c, out.out, out.quiet)
        }
    }
}
