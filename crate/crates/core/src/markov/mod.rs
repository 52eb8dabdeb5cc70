//! Finite Markov chains and the closed-form convergence bounds for GA, SA and
//! two-group mutation schemes.

mod bounds;
mod matrix;
mod stationary;

pub use bounds::{
    ga_iteration_bound, geometric_bound_check, sa_temperature, zeta_two_group, GaBoundParams,
    GeometricBoundReport, Violation, ZetaParams, ZetaValue,
};
pub use matrix::TransitionMatrix;
pub use stationary::{
    is_regular, stationary_by_power_iteration, stationary_distribution, RegularityReport,
    StationaryDistribution, STATIONARY_RESIDUAL,
};

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MarkovError {
    Empty,
    NotSquare { row: usize, len: usize, size: usize },
    InvalidEntry { row: usize, col: usize, value: f64 },
    RowSum { row: usize, sum: f64 },
    NotRegular { max_power: usize },
    Singular,
    /// The solve converged but the residual `‖πP − π‖∞` is too large.
    Residual(f64),
    NoConvergence { iterations: usize },
    InvalidParameter { name: &'static str, value: f64, range: &'static str },
    /// The bound does not fit in a `u64`.
    Overflow,
}

impl fmt::Display for MarkovError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkovError::Empty => write!(f, "transition matrix is empty"),
            MarkovError::NotSquare { row, len, size } => {
                write!(f, "row {row} has {len} entries, matrix has {size} rows")
            }
            MarkovError::InvalidEntry { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is not a finite non-negative number")
            }
            MarkovError::RowSum { row, sum } => write!(f, "row {row} sums to {sum}, expected 1"),
            MarkovError::NotRegular { max_power } => write!(
                f,
                "regularity check failed: no power P^k with k <= {max_power} is strictly positive"
            ),
            MarkovError::Singular => write!(f, "stationary system is singular"),
            MarkovError::Residual(r) => write!(f, "stationary residual {r:e} above tolerance"),
            MarkovError::NoConvergence { iterations } => {
                write!(f, "power iteration did not converge in {iterations} iterations")
            }
            MarkovError::InvalidParameter { name, value, range } => {
                write!(f, "{name} = {value} outside {range}")
            }
            MarkovError::Overflow => write!(f, "bound exceeds u64 range"),
        }
    }
}

impl core::error::Error for MarkovError {}

pub type Result<T> = core::result::Result<T, MarkovError>;
