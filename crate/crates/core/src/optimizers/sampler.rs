use alloc::vec::Vec;

use rand::{Rng, RngCore};
use rand_distr::{Distribution, StandardNormal};

/// Source of the random factors used by the optimizers.
pub trait Sampler {
    /// Uniform on `[0, 1)`.
    fn unit(&mut self) -> f64;
    /// Standard normal.
    fn gaussian(&mut self) -> f64;
    /// Uniform on `0..n`, `n ≥ 1`.
    fn below(&mut self, n: usize) -> usize;
}

impl<R: RngCore + ?Sized> Sampler for R {
    fn unit(&mut self) -> f64 {
        self.random::<f64>()
    }

    fn gaussian(&mut self) -> f64 {
        StandardNormal.sample(self)
    }

    fn below(&mut self, n: usize) -> usize {
        self.random_range(0..n)
    }
}

/// Returns the same values on every draw. `unit` may be set to `1.0`, which a
/// real generator never produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedSampler {
    pub unit: f64,
    pub gaussian: f64,
    pub index: usize,
}

impl FixedSampler {
    pub fn new(unit: f64, gaussian: f64) -> Self {
        Self { unit, gaussian, index: 0 }
    }
}

impl Sampler for FixedSampler {
    fn unit(&mut self) -> f64 {
        self.unit
    }

    fn gaussian(&mut self) -> f64 {
        self.gaussian
    }

    fn below(&mut self, n: usize) -> usize {
        self.index.min(n - 1)
    }
}

/// Forwards to an inner sampler and records every `unit` and `gaussian` draw.
#[derive(Debug, Clone)]
pub struct RecordingSampler<S> {
    pub inner: S,
    pub units: Vec<f64>,
    pub gaussians: Vec<f64>,
}

impl<S> RecordingSampler<S> {
    pub fn new(inner: S) -> Self {
        Self { inner, units: Vec::new(), gaussians: Vec::new() }
    }
}

impl<S: Sampler> Sampler for RecordingSampler<S> {
    fn unit(&mut self) -> f64 {
        let u = self.inner.unit();
        self.units.push(u);
        u
    }

    fn gaussian(&mut self) -> f64 {
        let g = self.inner.gaussian();
        self.gaussians.push(g);
        g
    }

    fn below(&mut self, n: usize) -> usize {
        self.inner.below(n)
    }
}
