//! Algorithmic core of nflab.
//!
//! * [`function_space`]: exhaustive enumeration of every function on a finite
//!   domain, deterministic search policies and the trace-distribution
//!   comparisons behind the no-free-lunch equality.
//! * [`dynamics`]: the reduced linear PSO system, one-dimensional firefly and
//!   logistic maps, orbit classification and invariant densities.
//! * [`optimizers`]: PSO (with inertia), the firefly algorithm, simulated
//!   annealing with logarithmic cooling and a bitstring GA.
//! * [`markov`]: transition matrices, stationary distributions and the closed
//!   form convergence bounds.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod function_space;
pub mod markov;
pub mod optimizers;
pub mod seed;
pub mod stats;
