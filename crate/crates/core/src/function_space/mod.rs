//! Exhaustive no-free-lunch laboratory on finite domains.
//!
//! A [`FiniteDomain`] fixes `|X| = nx` points and `|Y| = ny` values; the space
//! of all `ny^nx` objective tables is enumerated in lexicographic order. Search
//! policies are deterministic functions of the trace so far, and the analyses
//! compare the multisets of y-traces they produce over the whole space or over
//! an explicit subset. Maximization convention; ties break toward the lowest
//! index.

mod analysis;
mod domain;
mod policy;
mod trace;

pub use analysis::{
    free_lunch_report, is_closed_under_permutation, nfl_equality, revisiting_demo,
    FreeLunchReport, NflReport, RevisitReport, Winner, DETERMINISTIC_NOTE,
};
pub use domain::{
    enumerate_function_space, EnumerationCap, FiniteDomain, FunctionSpace, FunctionSubset,
    ObjectiveTable,
};
pub use policy::{parse_policy, Policy, PolicyKind, SearchPolicy};
pub use trace::{
    run_policy, trace_distribution, trace_distribution_full, trace_distribution_range, Trace,
    TraceDistribution, Visit,
};

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionSpaceError {
    InvalidDomain { nx: usize, ny: u32 },
    /// `ny^nx` exceeds the enumeration cap (`count` is `None` on `u64` overflow).
    BudgetExceeded { nx: usize, ny: u32, count: Option<u64>, cap: u64 },
    LengthMismatch { expected: usize, found: usize },
    ValueOutOfRange { index: usize, value: u32, ny: u32 },
    InvalidHorizon { k: usize, nx: usize },
    /// A policy flagged non-revisiting proposed an already visited point.
    RevisitViolation { policy: String, step: usize, x: usize },
    ProposalOutOfRange { policy: String, x: usize, nx: usize },
    RevisitingPolicy { policy: String },
    InvalidPermutation,
    EmptySubset,
    MixedDomains,
    DuplicateMember { index: usize },
    UnknownPolicy(String),
}

impl fmt::Display for FunctionSpaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctionSpaceError::*;
        match self {
            InvalidDomain { nx, ny } => write!(f, "invalid domain nx={nx} ny={ny}: both must be >= 1"),
            BudgetExceeded { nx, ny, count: Some(c), cap } => {
                write!(f, "function space {ny}^{nx} = {c} tables exceeds the enumeration cap {cap}")
            }
            BudgetExceeded { nx, ny, count: None, cap } => {
                write!(f, "function space {ny}^{nx} overflows u64 (cap {cap})")
            }
            LengthMismatch { expected, found } => {
                write!(f, "table has {found} values, domain needs {expected}")
            }
            ValueOutOfRange { index, value, ny } => {
                write!(f, "value {value} at x={index} is outside 0..{ny}")
            }
            InvalidHorizon { k, nx } => write!(f, "horizon k={k} is invalid for nx={nx}"),
            RevisitViolation { policy, step, x } => write!(
                f,
                "policy `{policy}` is flagged non-revisiting but proposed visited point {x} at step {step}"
            ),
            ProposalOutOfRange { policy, x, nx } => {
                write!(f, "policy `{policy}` proposed x={x} outside 0..{nx}")
            }
            RevisitingPolicy { policy } => write!(
                f,
                "policy `{policy}` revisits points; the equality only covers non-revisiting policies (use the revisiting demo)"
            ),
            InvalidPermutation => write!(f, "not a permutation of the domain points"),
            EmptySubset => write!(f, "function subset is empty"),
            MixedDomains => write!(f, "subset members do not share one domain"),
            DuplicateMember { index } => write!(f, "subset member {index} is a duplicate"),
            UnknownPolicy(s) => write!(f, "unknown policy `{s}`"),
        }
    }
}

impl core::error::Error for FunctionSpaceError {}

pub type Result<T> = core::result::Result<T, FunctionSpaceError>;
