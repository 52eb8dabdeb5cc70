use alloc::vec::Vec;

use super::{check_bounds, check_param, clamp_into, uniform_point, OptimizerError, Result, RunRecord, Sampler, Sense};
use crate::seed;

/// Distribution of the FA randomization term `ε_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Noise {
    /// Uniform on `[-0.5, 0.5)`.
    Uniform,
    #[default]
    Gaussian,
}

impl Noise {
    fn draw<S: Sampler + ?Sized>(self, sampler: &mut S) -> f64 {
        match self {
            Noise::Uniform => sampler.unit() - 0.5,
            Noise::Gaussian => sampler.gaussian(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FaConfig {
    /// Attractiveness at `r = 0`.
    pub beta0: f64,
    /// Light absorption coefficient.
    pub gamma: f64,
    pub alpha: f64,
    pub population: usize,
    pub bounds: Vec<(f64, f64)>,
    pub noise: Noise,
    /// Optional linear decay of `β₀` to this value over `beta0_horizon`
    /// iterations. Off unless set.
    pub beta0_final: Option<f64>,
    pub beta0_horizon: usize,
}

impl FaConfig {
    pub fn new(beta0: f64, gamma: f64, alpha: f64, population: usize, bounds: Vec<(f64, f64)>) -> Result<Self> {
        let c = Self {
            beta0,
            gamma,
            alpha,
            population,
            bounds,
            noise: Noise::default(),
            beta0_final: None,
            beta0_horizon: 0,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        check_param("beta0", self.beta0, 0.0, 1.0, "[0, 1]")?;
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(OptimizerError::InvalidParameter { name: "gamma", value: self.gamma, range: "(0, inf)" });
        }
        check_param("alpha", self.alpha, 0.0, f64::MAX, "[0, inf)")?;
        check_param("population", self.population as f64, 2.0, f64::MAX, "[2, inf)")?;
        if let Some(b) = self.beta0_final {
            check_param("beta0_final", b, 0.0, 1.0, "[0, 1]")?;
        }
        check_bounds(&self.bounds)
    }

    /// `β₀` in effect at iteration `t`.
    pub fn beta0_at(&self, t: usize) -> f64 {
        match self.beta0_final {
            None => self.beta0,
            Some(end) if t >= self.beta0_horizon => end,
            Some(end) => {
                let frac = t as f64 / self.beta0_horizon as f64;
                self.beta0 + (end - self.beta0) * frac
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FaState {
    pub positions: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub iteration: usize,
    pub evaluations: u64,
}

impl FaState {
    pub fn init<F, S>(config: &FaConfig, objective: F, sampler: &mut S) -> Self
    where
        F: Fn(&[f64]) -> f64,
        S: Sampler + ?Sized,
    {
        let positions: Vec<Vec<f64>> = (0..config.population).map(|_| uniform_point(&config.bounds, sampler)).collect();
        Self::from_positions(positions, objective)
    }

    pub fn from_positions<F: Fn(&[f64]) -> f64>(positions: Vec<Vec<f64>>, objective: F) -> Self {
        let values: Vec<f64> = positions.iter().map(|p| objective(p)).collect();
        let evaluations = values.len() as u64;
        Self { positions, values, iteration: 0, evaluations }
    }

    /// Index and value of the brightest firefly (lowest index on ties).
    pub fn best(&self) -> (usize, f64) {
        let mut best = (0, self.values[0]);
        for (i, &v) in self.values.iter().enumerate().skip(1) {
            if v < best.1 {
                best = (i, v);
            }
        }
        best
    }
}

/// One sequential FA sweep.
///
/// Firefly `i` (in index order) moves toward every brighter firefly `j`
/// (lower objective, scanned in index order) by
/// `β₀ e^{−γ r²} (x_j − x_i)`, each move applied immediately. It then takes
/// one random step `α ε_i`, is clamped to the bounds and re-evaluated before
/// firefly `i + 1` is processed.
pub fn fa_step<F, S>(mut state: FaState, config: &FaConfig, objective: F, sampler: &mut S) -> FaState
where
    F: Fn(&[f64]) -> f64,
    S: Sampler + ?Sized,
{
    let beta0 = config.beta0_at(state.iteration);
    let n = state.positions.len();
    for i in 0..n {
        let own = state.values[i];
        let mut xi = core::mem::take(&mut state.positions[i]);
        for j in 0..n {
            if j == i || state.values[j] >= own {
                continue;
            }
            let xj = &state.positions[j];
            let r2: f64 = xi.iter().zip(xj).map(|(a, b)| (a - b) * (a - b)).sum();
            let attraction = beta0 * libm::exp(-config.gamma * r2);
            for (a, b) in xi.iter_mut().zip(xj) {
                *a += attraction * (b - *a);
            }
        }
        for a in xi.iter_mut() {
            *a += config.alpha * config.noise.draw(sampler);
        }
        clamp_into(&mut xi, &config.bounds);
        state.values[i] = objective(&xi);
        state.positions[i] = xi;
    }
    state.evaluations += n as u64;
    state.iteration += 1;
    state
}

/// Seeded FA run recording the best value seen after every iteration.
pub fn run_fa<F: Fn(&[f64]) -> f64>(objective: F, config: &FaConfig, iters: usize, seed: u64) -> Result<RunRecord<Vec<f64>>> {
    config.validate()?;
    let mut rng = seed::stream(seed, "firefly");
    let mut state = FaState::init(config, &objective, &mut rng);
    let (i0, v0) = state.best();
    let mut best = (state.positions[i0].clone(), v0);
    let mut best_so_far = Vec::with_capacity(iters);
    for _ in 0..iters {
        state = fa_step(state, config, &objective, &mut rng);
        let (i, v) = state.best();
        if v < best.1 {
            best = (state.positions[i].clone(), v);
        }
        best_so_far.push(best.1);
    }
    Ok(RunRecord {
        seed: Some(seed),
        sense: Sense::Minimize,
        best_so_far,
        final_best: best.0,
        final_value: best.1,
        evaluations: state.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizers::{sphere, FixedSampler, RecordingSampler};
    use alloc::vec;

    fn cfg(beta0: f64, alpha: f64) -> FaConfig {
        FaConfig::new(beta0, 1.0, alpha, 2, vec![(-10.0, 10.0)]).unwrap()
    }

    #[test]
    fn attraction_hand_value() {
        let s = FaState::from_positions(vec![vec![0.0], vec![1.0]], |x| (x[0] - 1.0).abs());
        let s = fa_step(s, &cfg(1.0, 0.0), |x| (x[0] - 1.0).abs(), &mut FixedSampler::new(0.5, 0.0));
        assert!((s.positions[0][0] - libm::exp(-1.0)).abs() < 1e-15);
        assert!((s.positions[0][0] - 0.3678794).abs() < 1e-7);
        assert_eq!(s.positions[1][0], 1.0);
    }

    #[test]
    fn zero_beta_is_random_walk() {
        let start = vec![vec![0.25, -1.0], vec![3.0, 2.0], vec![-4.0, 0.5]];
        let mut c = FaConfig::new(0.0, 1.0, 0.3, 3, vec![(-100.0, 100.0); 2]).unwrap();
        for noise in [Noise::Gaussian, Noise::Uniform] {
            c.noise = noise;
            let s = FaState::from_positions(start.clone(), sphere);
            let mut rec = RecordingSampler::new(seed::seeded(9));
            let out = fa_step(s, &c, sphere, &mut rec);
            let eps: Vec<f64> = match noise {
                Noise::Gaussian => rec.gaussians.clone(),
                Noise::Uniform => rec.units.iter().map(|u| u - 0.5).collect(),
            };
            assert_eq!(eps.len(), 6);
            for i in 0..3 {
                for d in 0..2 {
                    assert_eq!(out.positions[i][d], start[i][d] + c.alpha * eps[2 * i + d]);
                }
            }
        }
    }

    #[test]
    fn coincident_fireflies_stay() {
        let s = FaState::from_positions(vec![vec![2.0], vec![2.0]], sphere);
        let out = fa_step(s, &cfg(1.0, 0.0), sphere, &mut seed::seeded(1));
        assert_eq!(out.positions, vec![vec![2.0], vec![2.0]]);
    }

    #[test]
    fn beta_decay_and_validation() {
        let mut c = cfg(1.0, 0.1);
        assert_eq!(c.beta0_at(100), 1.0);
        c.beta0_final = Some(0.2);
        c.beta0_horizon = 10;
        assert!((c.beta0_at(5) - 0.6).abs() < 1e-15);
        assert_eq!(c.beta0_at(20), 0.2);
        assert!(FaConfig::new(1.5, 1.0, 0.1, 2, vec![(-1.0, 1.0)]).is_err());
        assert!(FaConfig::new(1.0, 0.0, 0.1, 2, vec![(-1.0, 1.0)]).is_err());
        assert!(FaConfig::new(1.0, 1.0, 0.1, 1, vec![(-1.0, 1.0)]).is_err());
    }

    #[test]
    fn run_improves_sphere() {
        let c = FaConfig::new(1.0, 1.0, 0.05, 15, vec![(-5.12, 5.12); 2]).unwrap();
        let r = run_fa(sphere, &c, 100, 4).unwrap();
        assert!(r.is_monotone());
        assert!(r.final_value < 0.05, "{}", r.final_value);
        assert_eq!(r, run_fa(sphere, &c, 100, 4).unwrap());
    }
}
