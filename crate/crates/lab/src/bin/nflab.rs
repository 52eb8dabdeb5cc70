use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nflab::cli::{parse_args, parse_kv, report, run_to_dir};
use nflab::{parse_config, ExperimentConfig, ExperimentKind, LabError};
use serde_json::Value;

/// Run an experiment and write its artifacts and manifest.
#[derive(Parser)]
#[command(name = "nflab", version)]
struct Cli {
    #[command(subcommand)]
    experiment: Experiment,
}

#[derive(Subcommand)]
enum Experiment {
    NflVerify(Common),
    NflFreelunch(Common),
    RevisitDemo(Common),
    DynOrbit(Common),
    DynScan(Common),
    DynDensity(Common),
    OptRun(Common),
    MarkovCheck(Common),
    BoundsCalc(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config; its `experiment` must match the subcommand.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: the config's, else `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
    /// Parameter override, `key=value` (value read as JSON when possible).
    #[arg(short = 'p', long = "param", value_parser = parse_kv)]
    params: Vec<(String, Value)>,
}

fn split(e: Experiment) -> (ExperimentKind, Common) {
    use ExperimentKind as K;
    match e {
        Experiment::NflVerify(c) => (K::NflVerify, c),
        Experiment::NflFreelunch(c) => (K::NflFreelunch, c),
        Experiment::RevisitDemo(c) => (K::RevisitDemo, c),
        Experiment::DynOrbit(c) => (K::DynOrbit, c),
        Experiment::DynScan(c) => (K::DynScan, c),
        Experiment::DynDensity(c) => (K::DynDensity, c),
        Experiment::OptRun(c) => (K::OptRun, c),
        Experiment::MarkovCheck(c) => (K::MarkovCheck, c),
        Experiment::BoundsCalc(c) => (K::BoundsCalc, c),
    }
}

fn build(kind: ExperimentKind, common: Common) -> Result<(ExperimentConfig, bool), LabError> {
    let mut config = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| LabError::Io { path: path.clone(), source: e })?;
            let c = parse_config(&text, &path.display().to_string())?;
            if c.experiment != kind {
                return Err(LabError::Validation {
                    experiment: kind.to_string(),
                    keys: vec!["experiment".into()],
                    problems: vec![format!("config is for `{}`", c.experiment)],
                });
            }
            c
        }
        None => ExperimentConfig::new(kind),
    };
    config.parameters.extend(common.params);
    if let Some(s) = common.seed {
        config.seed = s;
    }
    if let Some(dir) = common.out {
        config.output_dir = dir;
    }
    Ok((config, common.quiet))
}

fn main() -> ExitCode {
    let cli: Cli = parse_args();
    let (kind, common) = split(cli.experiment);
    report(build(kind, common).map(|(config, quiet)| run_to_dir(&config, quiet)))
}
