//! Shared plumbing for the command-line tools.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::experiments::{compute, run_experiment};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NEGATIVE: u8 = 2;

/// Parses arguments; usage errors exit with status 1, `--help` with 0.
pub fn parse_args<T: Parser>() -> T {
    T::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { i32::from(EXIT_USAGE) } else { 0 })
    })
}

/// `key=value`, with the value read as JSON when it parses and as a string
/// otherwise.
pub fn parse_kv(s: &str) -> std::result::Result<(String, Value), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.into()));
    Ok((k.trim().into(), value))
}

pub fn read_json_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| LabError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn fail(e: &LabError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn status(negative: bool) -> ExitCode {
    ExitCode::from(if negative { EXIT_NEGATIVE } else { EXIT_OK })
}

/// Writes all artifacts plus a manifest into `config.output_dir` and lists
/// them on stdout unless `quiet`.
pub fn run_to_dir(config: &ExperimentConfig, quiet: bool) -> ExitCode {
    match run_experiment(config) {
        Ok(out) => {
            if !quiet {
                for a in &out.manifest.artifacts {
                    println!("{}  {}", a.sha256, out.dir.join(&a.file).display());
                }
                if out.manifest.negative {
                    println!("result: negative");
                }
            }
            status(out.manifest.negative)
        }
        Err(e) => fail(&e),
    }
}

/// With `out`, behaves like [`run_to_dir`]; otherwise prints the primary
/// artifact to stdout.
pub fn run_or_print(mut config: ExperimentConfig, out: Option<PathBuf>, quiet: bool) -> ExitCode {
    if let Some(dir) = out {
        config.output_dir = dir;
        return run_to_dir(&config, quiet);
    }
    match config.validated().and_then(|c| compute(&c)) {
        Ok(c) => {
            print!("{}", String::from_utf8_lossy(&c.primary().bytes));
            status(c.negative)
        }
        Err(e) => fail(&e),
    }
}

/// Prints a JSON value with a trailing newline.
pub fn print_json(value: &Value) -> ExitCode {
    match serde_json::to_string_pretty(value) {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e.into()),
    }
}

pub fn report(result: Result<ExitCode>) -> ExitCode {
    result.unwrap_or_else(|e| fail(&e))
}
