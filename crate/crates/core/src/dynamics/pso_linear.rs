use alloc::vec::Vec;
use num_complex::Complex64;

use super::{DynamicsError, Result};

/// Absolute tolerance for recognising the `γ = 4` bifurcation.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Single particle, randomness removed, global best replaced by `attractor`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PsoLinearSystem {
    gamma: f64,
    attractor: f64,
}

impl PsoLinearSystem {
    pub fn new(gamma: f64, attractor: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(Self { gamma, attractor })
    }

    /// `γ = α + β`.
    pub fn from_acceleration(alpha: f64, beta: f64, attractor: f64) -> Result<Self> {
        Self::new(alpha + beta, attractor)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn attractor(&self) -> f64 {
        self.attractor
    }

    /// `A = [[1, γ], [−1, 1−γ]]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[1.0, self.gamma], [-1.0, 1.0 - self.gamma]]
    }

    pub fn apply(&self, (v, u): (f64, f64)) -> (f64, f64) {
        (v + self.gamma * u, -v + (1.0 - self.gamma) * u)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma >= 0.0 {
        Ok(())
    } else {
        Err(DynamicsError::NegativeGamma(gamma))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
}

impl Eigenpair {
    pub fn max_modulus(&self) -> f64 {
        self.lambda1.norm().max(self.lambda2.norm())
    }
}

/// Eigenvalues `1 − γ/2 ± √(γ² − 4γ)/2` of the reduced PSO matrix.
///
/// For `γ > 4` the small root is taken as the reciprocal of the large one
/// (the determinant is 1), which avoids cancellation. `lambda1` carries the
/// `+` sign in the complex case and the root of larger modulus in the real
/// case.
pub fn pso_eigenvalues(gamma: f64) -> Eigenpair {
    let centre = 1.0 - gamma / 2.0;
    let disc = gamma * gamma - 4.0 * gamma;
    if disc < 0.0 {
        let im = libm::sqrt(-disc) / 2.0;
        Eigenpair { lambda1: Complex64::new(centre, im), lambda2: Complex64::new(centre, -im) }
    } else {
        let half = libm::sqrt(disc) / 2.0;
        let big = if centre < 0.0 { centre - half } else { centre + half };
        let small = if big == 0.0 { 0.0 } else { 1.0 / big };
        Eigenpair { lambda1: Complex64::new(big, 0.0), lambda2: Complex64::new(small, 0.0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum PsoRegime {
    Stationary,
    CyclicQuasiCyclic,
    BifurcationBoundary,
    Divergent,
}

pub fn classify_pso_regime(gamma: f64) -> Result<PsoRegime> {
    check_gamma(gamma)?;
    Ok(if gamma == 0.0 {
        PsoRegime::Stationary
    } else if (gamma - 4.0).abs() <= BOUNDARY_TOL {
        PsoRegime::BifurcationBoundary
    } else if gamma < 4.0 {
        PsoRegime::CyclicQuasiCyclic
    } else {
        PsoRegime::Divergent
    })
}

/// States `Y_0, …, Y_steps` of `Y_{t+1} = A Y_t` with `Y = (v, u)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Orbit2D {
    pub gamma: f64,
    pub states: Vec<(f64, f64)>,
    pub distances: Vec<f64>,
}

pub fn iterate_pso_linear(gamma: f64, v0: f64, u0: f64, steps: usize) -> Result<Orbit2D> {
    let system = PsoLinearSystem::new(gamma, 0.0)?;
    if steps == 0 {
        return Err(DynamicsError::InvalidSteps { steps, transient: 0 });
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push((v0, u0));
    for _ in 0..steps {
        let next = system.apply(*states.last().expect("non-empty"));
        states.push(next);
    }
    let distances = states.iter().map(|&(v, u)| libm::hypot(v, u)).collect();
    Ok(Orbit2D { gamma, states, distances })
}
