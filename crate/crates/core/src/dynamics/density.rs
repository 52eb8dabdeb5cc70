use alloc::vec::Vec;

use super::maps::logistic_step;
use super::{DynamicsError, Result};
use crate::stats::{arcsine_cdf, ks_distance};

/// Empirical invariant density of a logistic orbit over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityHistogram {
    pub lambda: f64,
    pub u0: f64,
    pub bins: usize,
    /// `bins + 1` edges, `0` to `1`.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    /// The orbit landed on an exact fixed point (e.g. `0` or `1 − 1/λ`).
    pub degenerate: bool,
    /// KS distance of the raw iterates to the arcsine CDF `(2/π)·asin(√u)`.
    pub ks_arcsine: f64,
}

impl DensityHistogram {
    pub fn bin_of(&self, u: f64) -> usize {
        bin_index(u, self.bins)
    }
}

fn bin_index(u: f64, bins: usize) -> usize {
    ((u * bins as f64) as usize).min(bins - 1)
}

/// Histogram of `n` logistic iterates taken after `transient` discarded ones.
pub fn invariant_density(lambda: f64, u0: f64, n: usize, bins: usize, transient: usize) -> Result<DensityHistogram> {
    if bins == 0 {
        return Err(DynamicsError::ZeroBins);
    }
    if n == 0 {
        return Err(DynamicsError::InvalidSteps { steps: 0, transient });
    }
    let mut u = u0;
    let mut degenerate = logistic_step(u, lambda)? == u;
    for _ in 0..transient {
        u = logistic_step(u, lambda)?;
    }
    let mut counts = alloc::vec![0u64; bins];
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let next = logistic_step(u, lambda)?;
        degenerate |= next == u;
        u = next;
        counts[bin_index(u, bins)] += 1;
        samples.push(u);
    }
    let edges = (0..=bins).map(|i| i as f64 / bins as f64).collect();
    Ok(DensityHistogram {
        lambda,
        u0,
        bins,
        edges,
        counts,
        total: n as u64,
        degenerate,
        ks_arcsine: ks_distance(&samples, arcsine_cdf),
    })
}
