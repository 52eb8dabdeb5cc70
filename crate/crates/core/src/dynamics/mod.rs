//! Deterministic dynamics behind the convergence analyses: the reduced
//! single-particle PSO system, the one-dimensional firefly maps, the logistic
//! map and its invariant density.

mod density;
mod maps;
mod pso_linear;
mod special;

pub use density::{invariant_density, DensityHistogram};
pub use maps::{
    bifurcation_scan, classify_iterates, firefly_map_step, firefly_raw_step, logistic_step, orbit,
    IteratedMap, MapKind, MapOrbit, OrbitClass, ScanRow, DIVERGENCE_LIMIT, FIXED_POINT_TOL,
    MAX_PERIOD, PERIOD_TOL,
};
pub use pso_linear::{
    classify_pso_regime, iterate_pso_linear, pso_eigenvalues, Eigenpair, Orbit2D, PsoLinearSystem,
    PsoRegime, BOUNDARY_TOL,
};
pub use special::{beta_density, gamma_function, ln_gamma};
pub use num_complex::Complex64;

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum DynamicsError {
    NegativeGamma(f64),
    NonPositiveScale(f64),
    /// `name` outside its admissible interval, described by `range`.
    OutOfDomain { name: &'static str, value: f64, range: &'static str },
    InvalidSteps { steps: usize, transient: usize },
    InvalidScan(&'static str),
    UnknownMap(String),
    ZeroBins,
}

impl fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynamicsError::NegativeGamma(g) => write!(f, "gamma must be finite and >= 0, got {g}"),
            DynamicsError::NonPositiveScale(g) => write!(f, "scale gamma must be > 0, got {g}"),
            DynamicsError::OutOfDomain { name, value, range } => {
                write!(f, "{name} = {value} outside {range}")
            }
            DynamicsError::InvalidSteps { steps, transient } => {
                write!(f, "need steps > transient, got steps={steps} transient={transient}")
            }
            DynamicsError::InvalidScan(why) => write!(f, "invalid scan: {why}"),
            DynamicsError::UnknownMap(m) => {
                write!(f, "unknown map `{m}` (expected firefly-normalized, firefly-raw or logistic)")
            }
            DynamicsError::ZeroBins => write!(f, "histogram needs at least one bin"),
        }
    }
}

impl core::error::Error for DynamicsError {}

pub type Result<T> = core::result::Result<T, DynamicsError>;
