//! Adaptive quantum-inspired differential evolution.
//!
//! Individuals carry a vector of Q-bit angles theta; the observation
//! probability of bit j is sin^2(theta_j). Differential mutation and
//! binomial crossover act on the angles, the trial angles are observed,
//! repaired and evaluated, and greedy selection keeps the fitter of
//! target and trial. The mutation weight F and crossover rate CR are
//! re-sampled every generation: F as the product of two uniform draws
//! scaled to [0, 0.1), CR from a narrow Gaussian around 0.5.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::knapsack::{BinarySolution, KnapsackInstance};
use crate::{Error, Result};

/// Per-generation control parameters.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveParams {
    pub f_value: f64,
    pub cr_value: f64,
}

/// Product of two uniform [0,1) draws times 0.1; biased toward zero so
/// angle perturbations stay small.
pub fn sample_f<R: Rng>(rng: &mut R) -> f64 {
    rng.gen::<f64>() * rng.gen::<f64>() * 0.1
}

/// Gaussian draw with mean 0.5 and standard deviation 0.0375, clamped
/// into [0, 1]. The clamp activates with negligible probability; it only
/// keeps the parameter total.
pub fn sample_cr<R: Rng>(rng: &mut R) -> f64 {
    let normal = Normal::new(0.5f64, 0.0375).unwrap();
    let draw: f64 = normal.sample(rng);
    draw.clamp(0.0, 1.0)
}

pub fn sample_params<R: Rng>(rng: &mut R) -> AdaptiveParams {
    AdaptiveParams {
        f_value: sample_f(rng),
        cr_value: sample_cr(rng),
    }
}

/// One AQDE individual: Q-bit angles plus the stored repaired solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaIndividual {
    pub angles: Vec<f64>,
    pub observed: BinarySolution,
}

/// Samples a bit vector: bit j is 1 iff rand() < sin^2(theta_j).
pub fn observe_theta<R: Rng>(angles: &[f64], rng: &mut R) -> Vec<bool> {
    angles
        .iter()
        .map(|&theta| {
            let s = theta.sin();
            rng.gen::<f64>() < s * s
        })
        .collect()
}

/// Donor vector: base + f * (a - b), elementwise. Angles are left
/// unwrapped; sin^2 is 2*pi-periodic so wrapping would be unobservable.
pub fn mutant_vector(base: &[f64], a: &[f64], b: &[f64], f_value: f64) -> Vec<f64> {
    base.iter()
        .zip(a.iter().zip(b))
        .map(|(&r1, (&r2, &r3))| r1 + f_value * (r2 - r3))
        .collect()
}

/// Picks r1, r2, r3 distinct from each other and from `target_index`,
/// then forms the donor vector from the population snapshot.
pub fn mutate_theta<R: Rng>(
    angles: &[Vec<f64>],
    target_index: usize,
    f_value: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let n = angles.len();
    if n < 4 {
        return Err(Error::InvalidConfiguration(format!(
            "differential mutation needs a population of at least 4, got {n}"
        )));
    }
    let mut picked = [target_index; 3];
    for slot in 0..3 {
        loop {
            let r = rng.gen_range(0..n);
            if r != target_index && !picked[..slot].contains(&r) {
                picked[slot] = r;
                break;
            }
        }
    }
    Ok(mutant_vector(
        &angles[picked[0]],
        &angles[picked[1]],
        &angles[picked[2]],
        f_value,
    ))
}

/// Binomial crossover over angle vectors: dimension j takes the mutant
/// value iff rand() <= cr or j is the forced index, so at least one
/// dimension always comes from the mutant.
pub fn crossover_theta<R: Rng>(
    target: &[f64],
    mutant: &[f64],
    cr_value: f64,
    rng: &mut R,
) -> Vec<f64> {
    assert_eq!(target.len(), mutant.len());
    let forced = rng.gen_range(0..target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&t, &m))| {
            if j == forced || rng.gen::<f64>() <= cr_value {
                m
            } else {
                t
            }
        })
        .collect()
}

/// Greedy selection: the trial replaces the target only when strictly
/// fitter; ties keep the incumbent. Angles and stored solution update
/// together.
pub fn select(
    target: &ThetaIndividual,
    trial_angles: Vec<f64>,
    trial_solution: BinarySolution,
) -> ThetaIndividual {
    if trial_solution.fitness > target.observed.fitness {
        ThetaIndividual {
            angles: trial_angles,
            observed: trial_solution,
        }
    } else {
        target.clone()
    }
}

#[derive(Debug, Clone)]
pub struct AqdeConfig {
    /// Re-sample F for every individual instead of once per generation.
    /// CR stays per-generation either way.
    pub f_per_individual: bool,
}

impl Default for AqdeConfig {
    fn default() -> Self {
        Self {
            f_per_individual: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AqdeState {
    pub population: Vec<ThetaIndividual>,
    pub generation: u32,
}

impl AqdeState {
    /// Angles uniform in [0, 2*pi); every individual observed, repaired
    /// and evaluated before the first generation.
    pub fn init<R: Rng>(
        instance: &KnapsackInstance,
        population_size: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if population_size < 4 {
            return Err(Error::InvalidConfiguration(format!(
                "AQDE needs a population of at least 4, got {population_size}"
            )));
        }
        let m = instance.item_count();
        let population = (0..population_size)
            .map(|_| {
                let angles: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() * TAU).collect();
                let bits = observe_theta(&angles, rng);
                let observed = instance.repair_and_evaluate(&bits, rng);
                ThetaIndividual { angles, observed }
            })
            .collect();
        Ok(Self {
            population,
            generation: 0,
        })
    }

    pub fn best_fitness(&self) -> u64 {
        self.population
            .iter()
            .map(|i| i.observed.fitness)
            .max()
            .unwrap_or(0)
    }

    /// One generation with explicit control parameters. Mutation reads the
    /// generation-start snapshot; selection writes a fresh population
    /// (synchronous update).
    pub fn step_with_params<R: Rng>(
        &mut self,
        instance: &KnapsackInstance,
        params: AdaptiveParams,
        cfg: &AqdeConfig,
        rng: &mut R,
    ) -> Result<()> {
        let snapshot: Vec<Vec<f64>> = self.population.iter().map(|i| i.angles.clone()).collect();
        let mut next = Vec::with_capacity(self.population.len());
        for (i, target) in self.population.iter().enumerate() {
            let f_value = if cfg.f_per_individual {
                sample_f(rng)
            } else {
                params.f_value
            };
            let mutant = mutate_theta(&snapshot, i, f_value, rng)?;
            let trial_angles = crossover_theta(&target.angles, &mutant, params.cr_value, rng);
            let bits = observe_theta(&trial_angles, rng);
            let trial_solution = instance.repair_and_evaluate(&bits, rng);
            next.push(select(target, trial_angles, trial_solution));
        }
        self.population = next;
        self.generation += 1;
        Ok(())
    }

    /// One generation: samples a single (F, CR) pair shared by all
    /// individuals, then runs mutation, crossover, observation, repair
    /// and greedy selection.
    pub fn step<R: Rng>(
        &mut self,
        instance: &KnapsackInstance,
        cfg: &AqdeConfig,
        rng: &mut R,
    ) -> Result<()> {
        let params = sample_params(rng);
        self.step_with_params(instance, params, cfg, rng)
    }
}
