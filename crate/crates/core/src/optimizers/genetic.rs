use alloc::vec::Vec;

use super::{check_param, OptimizerError, Result, RunRecord, Sampler, Sense};
use crate::seed;

pub type Bitstring = Vec<bool>;

/// Bitstring GA parameters. Fitness is maximized.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GaConfig {
    pub length: usize,
    pub population: usize,
    pub mutation_rate: f64,
    pub elitism: bool,
    pub tournament: usize,
    /// One-point crossover between two tournament winners.
    pub crossover: bool,
}

impl GaConfig {
    /// Tournament size 2, crossover off.
    pub fn new(length: usize, population: usize, mutation_rate: f64, elitism: bool) -> Result<Self> {
        let c = Self { length, population, mutation_rate, elitism, tournament: 2, crossover: false };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        check_param("length", self.length as f64, 1.0, f64::MAX, "[1, inf)")?;
        check_param("population", self.population as f64, 1.0, f64::MAX, "[1, inf)")?;
        check_param("mutation_rate", self.mutation_rate, 0.0, 1.0, "[0, 1]")?;
        check_param("tournament", self.tournament as f64, 1.0, f64::MAX, "[1, inf)")
    }
}

pub fn random_population<S: Sampler + ?Sized>(config: &GaConfig, sampler: &mut S) -> Vec<Bitstring> {
    (0..config.population)
        .map(|_| (0..config.length).map(|_| sampler.unit() < 0.5).collect())
        .collect()
}

fn argmax(fit: &[f64]) -> usize {
    let mut best = 0;
    for (i, &f) in fit.iter().enumerate().skip(1) {
        if f > fit[best] {
            best = i;
        }
    }
    best
}

fn tournament<S: Sampler + ?Sized>(fit: &[f64], size: usize, sampler: &mut S) -> usize {
    let mut winner = sampler.below(fit.len());
    for _ in 1..size {
        let c = sampler.below(fit.len());
        if fit[c] > fit[winner] {
            winner = c;
        }
    }
    winner
}

/// One generation.
///
/// With elitism the fittest string (lowest index on ties) is copied
/// unchanged into slot 0. Every other slot is a tournament winner (draws with
/// replacement), optionally crossed with a second winner at a uniform cut,
/// then each bit flips when a fresh uniform falls below `μ`.
pub fn ga_step<F, S>(population: &[Bitstring], config: &GaConfig, fitness: F, sampler: &mut S) -> Result<Vec<Bitstring>>
where
    F: Fn(&[bool]) -> f64,
    S: Sampler + ?Sized,
{
    if population.is_empty() {
        return Err(OptimizerError::EmptyPopulation);
    }
    if let Some(bad) = population.iter().find(|b| b.len() != config.length) {
        return Err(OptimizerError::LengthMismatch { expected: config.length, found: bad.len() });
    }
    let fit: Vec<f64> = population.iter().map(|b| fitness(b)).collect();
    let mut next = Vec::with_capacity(population.len());
    if config.elitism {
        next.push(population[argmax(&fit)].clone());
    }
    while next.len() < population.len() {
        let mut child = population[tournament(&fit, config.tournament, sampler)].clone();
        if config.crossover && config.length > 1 {
            let other = &population[tournament(&fit, config.tournament, sampler)];
            let cut = 1 + sampler.below(config.length - 1);
            child[cut..].copy_from_slice(&other[cut..]);
        }
        for bit in child.iter_mut() {
            if sampler.unit() < config.mutation_rate {
                *bit = !*bit;
            }
        }
        next.push(child);
    }
    Ok(next)
}

fn best_of<F: Fn(&[bool]) -> f64>(population: &[Bitstring], fitness: &F) -> (usize, f64) {
    let fit: Vec<f64> = population.iter().map(|b| fitness(b)).collect();
    let i = argmax(&fit);
    (i, fit[i])
}

/// Seeded GA run recording the best fitness seen after every generation.
pub fn run_ga<F: Fn(&[bool]) -> f64>(fitness: F, config: &GaConfig, generations: usize, seed: u64) -> Result<RunRecord<Bitstring>> {
    config.validate()?;
    let mut rng = seed::stream(seed, "genetic");
    let mut pop = random_population(config, &mut rng);
    let (i, v) = best_of(&pop, &fitness);
    let mut best = (pop[i].clone(), v);
    let mut best_so_far = Vec::with_capacity(generations);
    for _ in 0..generations {
        pop = ga_step(&pop, config, &fitness, &mut rng)?;
        let (i, v) = best_of(&pop, &fitness);
        if v > best.1 {
            best = (pop[i].clone(), v);
        }
        best_so_far.push(best.1);
    }
    Ok(RunRecord {
        seed: Some(seed),
        sense: Sense::Maximize,
        best_so_far,
        final_best: best.0,
        final_value: best.1,
        evaluations: (config.population * (generations + 1)) as u64,
    })
}

/// First generation whose population contains a string with fitness at
/// least `target`; generation 0 is the initial population.
pub fn generations_to_target<F: Fn(&[bool]) -> f64>(
    fitness: F,
    config: &GaConfig,
    target: f64,
    max_generations: usize,
    seed: u64,
) -> Result<Option<usize>> {
    config.validate()?;
    let mut rng = seed::stream(seed, "genetic");
    let mut pop = random_population(config, &mut rng);
    for g in 0..=max_generations {
        if best_of(&pop, &fitness).1 >= target {
            return Ok(Some(g));
        }
        if g < max_generations {
            pop = ga_step(&pop, config, &fitness, &mut rng)?;
        }
    }
    Ok(None)
}
