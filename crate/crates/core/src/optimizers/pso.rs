use alloc::vec::Vec;

use super::{check_bounds, check_param, clamp_into, uniform_point, Result, RunRecord, Sampler, Sense};
use crate::seed;

/// Multiplier `θ(t)` applied to the previous velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "mode"))]
pub enum Inertia {
    Constant { theta: f64 },
    /// `θ(t)` falls linearly from `start` at `t = 0` to `end` at `t = horizon`
    /// and stays there.
    LinearDecay { start: f64, end: f64, horizon: usize },
}

impl Inertia {
    pub fn at(&self, t: usize) -> f64 {
        match *self {
            Inertia::Constant { theta } => theta,
            Inertia::LinearDecay { start, end, horizon } => {
                if t >= horizon {
                    return end;
                }
                let frac = t as f64 / horizon as f64;
                start + (end - start) * frac
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PsoConfig {
    /// Pull toward the global best.
    pub alpha: f64,
    /// Pull toward the particle's own best.
    pub beta: f64,
    pub inertia: Inertia,
    pub swarm_size: usize,
    /// One interval per dimension.
    pub bounds: Vec<(f64, f64)>,
}

impl PsoConfig {
    pub fn new(alpha: f64, beta: f64, inertia: Inertia, swarm_size: usize, bounds: Vec<(f64, f64)>) -> Result<Self> {
        let c = Self { alpha, beta, inertia, swarm_size, bounds };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        check_param("alpha", self.alpha, 0.0, f64::MAX, "[0, inf)")?;
        check_param("beta", self.beta, 0.0, f64::MAX, "[0, inf)")?;
        match self.inertia {
            Inertia::Constant { theta } => check_param("theta", theta, 0.0, 1.0, "[0, 1]")?,
            Inertia::LinearDecay { start, end, .. } => {
                check_param("theta_hi", start, 0.0, 1.0, "[0, 1]")?;
                check_param("theta_lo", end, 0.0, 1.0, "[0, 1]")?;
            }
        }
        check_param("swarm_size", self.swarm_size as f64, 1.0, f64::MAX, "[1, inf)")?;
        check_bounds(&self.bounds)
    }

    pub fn dimensions(&self) -> usize {
        self.bounds.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub value: f64,
    pub best_position: Vec<f64>,
    pub best_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PsoState {
    pub particles: Vec<Particle>,
    pub global_best_position: Vec<f64>,
    pub global_best_value: f64,
    pub iteration: usize,
    pub evaluations: u64,
}

impl PsoState {
    /// Positions uniform in the bounds, velocities zero.
    pub fn init<F, S>(config: &PsoConfig, objective: F, sampler: &mut S) -> Self
    where
        F: Fn(&[f64]) -> f64,
        S: Sampler + ?Sized,
    {
        let particles = (0..config.swarm_size)
            .map(|_| {
                let position = uniform_point(&config.bounds, sampler);
                let value = objective(&position);
                Particle {
                    velocity: alloc::vec![0.0; position.len()],
                    best_position: position.clone(),
                    best_value: value,
                    position,
                    value,
                }
            })
            .collect();
        Self::from_particles(particles)
    }

    /// Derives the global best from the particles' personal bests (lowest
    /// index wins ties).
    pub fn from_particles(particles: Vec<Particle>) -> Self {
        let evaluations = particles.len() as u64;
        let mut state = Self {
            particles,
            global_best_position: Vec::new(),
            global_best_value: f64::INFINITY,
            iteration: 0,
            evaluations,
        };
        state.refresh_global();
        state
    }

    fn refresh_global(&mut self) {
        for p in &self.particles {
            if p.best_value < self.global_best_value || self.global_best_position.is_empty() {
                self.global_best_value = p.best_value;
                self.global_best_position = p.best_position.clone();
            }
        }
    }
}

/// One synchronous PSO iteration.
///
/// For each particle in index order: draw `ε₁` (one uniform per dimension),
/// then `ε₂`; set `v ← θ(t)v + α ε₁∘(g* − x) + β ε₂∘(x* − x)` and
/// `x ← x + v`, clamping `x` to the bounds. Personal bests update as each
/// particle is evaluated; the global best updates after the whole swarm has
/// moved.
pub fn pso_step<F, S>(mut state: PsoState, config: &PsoConfig, objective: F, sampler: &mut S) -> PsoState
where
    F: Fn(&[f64]) -> f64,
    S: Sampler + ?Sized,
{
    let theta = config.inertia.at(state.iteration);
    let dims = config.dimensions();
    let g = state.global_best_position.clone();
    let mut eps1 = alloc::vec![0.0; dims];
    let mut eps2 = alloc::vec![0.0; dims];
    for p in state.particles.iter_mut() {
        eps1.iter_mut().for_each(|e| *e = sampler.unit());
        eps2.iter_mut().for_each(|e| *e = sampler.unit());
        for d in 0..dims {
            let x = p.position[d];
            p.velocity[d] = theta * p.velocity[d]
                + config.alpha * eps1[d] * (g[d] - x)
                + config.beta * eps2[d] * (p.best_position[d] - x);
            p.position[d] = x + p.velocity[d];
        }
        clamp_into(&mut p.position, &config.bounds);
        p.value = objective(&p.position);
        if p.value < p.best_value {
            p.best_value = p.value;
            p.best_position.clone_from(&p.position);
        }
    }
    state.evaluations += state.particles.len() as u64;
    state.iteration += 1;
    state.refresh_global();
    state
}

/// Seeded PSO run recording the global best after every iteration.
pub fn run_pso<F: Fn(&[f64]) -> f64>(objective: F, config: &PsoConfig, iters: usize, seed: u64) -> Result<RunRecord<Vec<f64>>> {
    config.validate()?;
    let mut rng = seed::stream(seed, "pso");
    let mut state = PsoState::init(config, &objective, &mut rng);
    let mut best_so_far = Vec::with_capacity(iters);
    for _ in 0..iters {
        state = pso_step(state, config, &objective, &mut rng);
        best_so_far.push(state.global_best_value);
    }
    Ok(RunRecord {
        seed: Some(seed),
        sense: Sense::Minimize,
        best_so_far,
        final_value: state.global_best_value,
        final_best: state.global_best_position,
        evaluations: state.evaluations,
    })
}
