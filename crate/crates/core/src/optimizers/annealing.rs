use alloc::vec::Vec;

use super::{check_bounds, clamp_into, Bitstring, OptimizerError, Result, RunRecord, Sampler, Sense};
use crate::markov::sa_temperature;
use crate::seed;

/// Logarithmic cooling `T_k = A / ln(k + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SaSchedule {
    a: f64,
}

impl SaSchedule {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a.is_finite() {
            Ok(Self { a })
        } else {
            Err(OptimizerError::InvalidParameter { name: "A", value: a, range: "(0, inf)" })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Temperature at step `k ≥ 1`.
    pub fn temperature(&self, k: u64) -> f64 {
        sa_temperature(self.a, k.max(1)).unwrap_or(f64::INFINITY)
    }
}

/// Metropolis search minimizing `objective`.
///
/// Step `k = 1..=iters` draws a candidate from `neighbor`, then one uniform
/// `u`. The candidate replaces the current point when `Δ ≤ 0` or
/// `u < exp(−Δ/T_k)`.
pub fn sa_run<T, F, N, S>(initial: T, objective: F, mut neighbor: N, schedule: SaSchedule, iters: usize, sampler: &mut S) -> RunRecord<T>
where
    T: Clone,
    F: Fn(&T) -> f64,
    N: FnMut(&T, &mut dyn Sampler) -> T,
    S: Sampler,
{
    let mut current = initial;
    let mut current_value = objective(&current);
    let mut best = (current.clone(), current_value);
    let mut best_so_far = Vec::with_capacity(iters);
    for k in 1..=iters as u64 {
        let candidate = neighbor(&current, sampler);
        let u = sampler.unit();
        let value = objective(&candidate);
        let delta = value - current_value;
        if delta <= 0.0 || u < libm::exp(-delta / schedule.temperature(k)) {
            current = candidate;
            current_value = value;
            if current_value < best.1 {
                best = (current.clone(), current_value);
            }
        }
        best_so_far.push(best.1);
    }
    RunRecord {
        seed: None,
        sense: Sense::Minimize,
        best_so_far,
        final_best: best.0,
        final_value: best.1,
        evaluations: iters as u64 + 1,
    }
}

/// [`sa_run`] on a seeded stream.
pub fn run_sa<T, F, N>(initial: T, objective: F, neighbor: N, schedule: SaSchedule, iters: usize, seed: u64) -> RunRecord<T>
where
    T: Clone,
    F: Fn(&T) -> f64,
    N: FnMut(&T, &mut dyn Sampler) -> T,
{
    let mut rng = seed::stream(seed, "annealing");
    let mut r = sa_run(initial, objective, neighbor, schedule, iters, &mut rng);
    r.seed = Some(seed);
    r
}

/// Adds `step · N(0, 1)` to every coordinate and clamps to `bounds`.
pub fn gaussian_neighbor(step: f64, bounds: Vec<(f64, f64)>) -> Result<impl FnMut(&Vec<f64>, &mut dyn Sampler) -> Vec<f64>> {
    check_bounds(&bounds)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(OptimizerError::InvalidParameter { name: "step", value: step, range: "(0, inf)" });
    }
    Ok(move |x: &Vec<f64>, s: &mut dyn Sampler| {
        let mut y: Vec<f64> = x.iter().map(|v| v + step * s.gaussian()).collect();
        clamp_into(&mut y, &bounds);
        y
    })
}

/// Flips one uniformly chosen bit.
pub fn bit_flip_neighbor() -> impl FnMut(&Bitstring, &mut dyn Sampler) -> Bitstring {
    |x: &Bitstring, s: &mut dyn Sampler| {
        let mut y = x.clone();
        if !y.is_empty() {
            let i = s.below(y.len());
            y[i] = !y[i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizers::{onemax, sphere};
    use alloc::vec;

    #[test]
    #[allow(clippy::approx_constant)]
    fn schedule_values() {
        let s = SaSchedule::new(1.0).unwrap();
        assert!((s.temperature(1) - 1.4426950).abs() < 1e-7);
        assert!(SaSchedule::new(0.0).is_err());
        assert!(SaSchedule::new(f64::NAN).is_err());
    }

    #[test]
    fn frozen_schedule_matches_greedy_oracle() {
        let bounds = vec![(-5.0, 5.0); 2];
        let schedule = SaSchedule::new(1e-300).unwrap();
        let r = run_sa(vec![3.0, -4.0], |x: &Vec<f64>| sphere(x), gaussian_neighbor(0.5, bounds.clone()).unwrap(), schedule, 300, 11);

        let mut rng = seed::stream(11, "annealing");
        let mut nb = gaussian_neighbor(0.5, bounds).unwrap();
        let mut x = vec![3.0, -4.0];
        let mut trajectory = Vec::new();
        for _ in 0..300 {
            let y = nb(&x, &mut rng);
            let _ = rng.unit();
            if sphere(&y) <= sphere(&x) {
                x = y;
            }
            trajectory.push(sphere(&x));
        }
        assert_eq!(r.best_so_far, trajectory);
        assert_eq!(r.final_best, x);
    }

    #[test]
    fn hot_schedule_accepts_worsening() {
        let uphill = |hot: f64| {
            let mut highest = 0.0f64;
            let nb = |x: &f64, _: &mut dyn Sampler| {
                highest = highest.max(*x);
                x + 1.0
            };
            let r = run_sa(0.0, |x: &f64| *x, nb, SaSchedule::new(hot).unwrap(), 50, 2);
            assert_eq!(r.final_value, 0.0);
            highest
        };
        assert!(uphill(1e6) > 10.0);
        assert_eq!(uphill(1e-300), 0.0);
    }

    #[test]
    fn bits_reach_minimum_of_negated_onemax() {
        let schedule = SaSchedule::new(0.5).unwrap();
        let r = run_sa(vec![false; 8], |b: &Bitstring| -onemax(b), bit_flip_neighbor(), schedule, 2000, 5);
        assert_eq!(r.final_value, -8.0);
        assert_eq!(r, run_sa(vec![false; 8], |b: &Bitstring| -onemax(b), bit_flip_neighbor(), schedule, 2000, 5));
    }
}
