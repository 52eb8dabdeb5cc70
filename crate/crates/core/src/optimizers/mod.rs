//! Metaheuristics: PSO with optional inertia, the firefly algorithm,
//! simulated annealing with logarithmic cooling and a bitstring GA.
//!
//! Continuous optimizers minimize; the GA maximizes fitness. Every step
//! function draws its randomness from an injected [`Sampler`], so tests can
//! pin the random factors to constants.

mod annealing;
mod firefly;
mod genetic;
mod objective;
mod pso;
mod sampler;

pub use annealing::{gaussian_neighbor, bit_flip_neighbor, run_sa, sa_run, SaSchedule};
pub use firefly::{fa_step, run_fa, FaConfig, FaState, Noise};
pub use genetic::{
    ga_step, generations_to_target, random_population, run_ga, Bitstring, GaConfig,
};
pub use objective::{needle, objective_catalog, onemax, sphere, Objective, ObjectiveDomain, ObjectiveKind};
pub use pso::{pso_step, run_pso, Inertia, Particle, PsoConfig, PsoState};
pub use sampler::{FixedSampler, RecordingSampler, Sampler};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum OptimizerError {
    InvalidParameter { name: &'static str, value: f64, range: &'static str },
    InvalidBounds { dim: usize, lo: f64, hi: f64 },
    EmptyPopulation,
    LengthMismatch { expected: usize, found: usize },
    UnknownObjective(String),
    WrongDomain { objective: String, algorithm: &'static str },
}

impl fmt::Display for OptimizerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimizerError::InvalidParameter { name, value, range } => {
                write!(f, "{name} = {value} outside {range}")
            }
            OptimizerError::InvalidBounds { dim, lo, hi } => {
                write!(f, "bounds [{lo}, {hi}] of dimension {dim} are not a finite interval")
            }
            OptimizerError::EmptyPopulation => write!(f, "population is empty"),
            OptimizerError::LengthMismatch { expected, found } => {
                write!(f, "expected length {expected}, found {found}")
            }
            OptimizerError::UnknownObjective(n) => {
                write!(f, "unknown objective `{n}` (expected sphere-D, onemax-L or needle-L)")
            }
            OptimizerError::WrongDomain { objective, algorithm } => {
                write!(f, "objective `{objective}` cannot be optimized by {algorithm}")
            }
        }
    }
}

impl core::error::Error for OptimizerError {}

pub type Result<T> = core::result::Result<T, OptimizerError>;

pub(crate) fn check_param(name: &'static str, value: f64, lo: f64, hi: f64, range: &'static str) -> Result<()> {
    if value >= lo && value <= hi {
        Ok(())
    } else {
        Err(OptimizerError::InvalidParameter { name, value, range })
    }
}

pub(crate) fn check_bounds(bounds: &[(f64, f64)]) -> Result<()> {
    if bounds.is_empty() {
        return Err(OptimizerError::InvalidParameter { name: "dimensions", value: 0.0, range: "[1, inf)" });
    }
    for (dim, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(OptimizerError::InvalidBounds { dim, lo, hi });
        }
    }
    Ok(())
}

pub(crate) fn clamp_into(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

pub(crate) fn uniform_point<S: Sampler + ?Sized>(bounds: &[(f64, f64)], sampler: &mut S) -> Vec<f64> {
    bounds.iter().map(|&(lo, hi)| lo + (hi - lo) * sampler.unit()).collect()
}

/// Optimization direction of a [`RunRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    pub fn better(&self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }
}

/// Output of a seeded run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunRecord<S> {
    /// `None` when the run used an injected sampler.
    pub seed: Option<u64>,
    pub sense: Sense,
    /// Best value seen after each iteration.
    pub best_so_far: Vec<f64>,
    pub final_best: S,
    pub final_value: f64,
    pub evaluations: u64,
}

impl<S> RunRecord<S> {
    /// Whether `best_so_far` never gets worse under `sense`.
    pub fn is_monotone(&self) -> bool {
        self.best_so_far.windows(2).all(|w| !self.sense.better(w[0], w[1]))
    }
}
