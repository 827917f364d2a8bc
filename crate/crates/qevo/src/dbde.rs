//! Discrete binary differential evolution baseline.
//!
//! Classical DE mutation is applied to bit vectors read as reals, the
//! real-valued mutant is discretized through a sigmoid, and binomial
//! crossover plus greedy selection proceed as in DE. F and CR are fixed
//! for the whole run.

use rand::Rng;

use crate::aqde::mutant_vector;
use crate::knapsack::{BinarySolution, KnapsackInstance};
use crate::{Error, Result};

/// Fixed control parameters for the run.
#[derive(Debug, Clone, Copy)]
pub struct DbdeParams {
    pub f_value: f64,
    pub cr_value: f64,
}

impl Default for DbdeParams {
    fn default() -> Self {
        Self {
            f_value: 0.8,
            cr_value: 0.5,
        }
    }
}

pub fn sigmoid(v: f64) -> f64 {
    1.0 / (1.0 + (-v).exp())
}

/// Bit d is 1 iff rand() <= sig(v_d).
pub fn sigmoid_discretize<R: Rng>(values: &[f64], rng: &mut R) -> Vec<bool> {
    values
        .iter()
        .map(|&v| rng.gen::<f64>() <= sigmoid(v))
        .collect()
}

fn bits_as_reals(bits: &[bool]) -> Vec<f64> {
    bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
}

/// DE mutation over bit vectors interpreted as reals.
pub fn de_mutate<R: Rng>(
    population: &[Vec<bool>],
    target_index: usize,
    f_value: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let n = population.len();
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
        &bits_as_reals(&population[picked[0]]),
        &bits_as_reals(&population[picked[1]]),
        &bits_as_reals(&population[picked[2]]),
        f_value,
    ))
}

/// Binomial crossover over bits; the forced dimension guarantees at
/// least one mutant bit.
pub fn binomial_crossover<R: Rng>(
    target: &[bool],
    mutant: &[bool],
    cr_value: f64,
    rng: &mut R,
) -> Vec<bool> {
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

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbdeIndividual {
    pub solution: BinarySolution,
}

#[derive(Debug, Clone)]
pub struct DbdeState {
    pub population: Vec<DbdeIndividual>,
    pub generation: u32,
}

impl DbdeState {
    /// Random binary strings, repaired and evaluated.
    pub fn init<R: Rng>(
        instance: &KnapsackInstance,
        population_size: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if population_size < 4 {
            return Err(Error::InvalidConfiguration(format!(
                "DBDE needs a population of at least 4, got {population_size}"
            )));
        }
        let m = instance.item_count();
        let population = (0..population_size)
            .map(|_| {
                let bits: Vec<bool> = (0..m).map(|_| rng.gen_bool(0.5)).collect();
                DbdeIndividual {
                    solution: instance.repair_and_evaluate(&bits, rng),
                }
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
            .map(|i| i.solution.fitness)
            .max()
            .unwrap_or(0)
    }

    /// One generation: mutate, discretize, cross over with the target
    /// bits, repair, evaluate, greedily replace. Synchronous update from
    /// the generation-start snapshot.
    pub fn step<R: Rng>(
        &mut self,
        instance: &KnapsackInstance,
        params: DbdeParams,
        rng: &mut R,
    ) -> Result<()> {
        let snapshot: Vec<Vec<bool>> = self
            .population
            .iter()
            .map(|i| i.solution.bits.clone())
            .collect();
        let mut next = Vec::with_capacity(self.population.len());
        for (i, target) in self.population.iter().enumerate() {
            let mutant_real = de_mutate(&snapshot, i, params.f_value, rng)?;
            let mutant_bits = sigmoid_discretize(&mutant_real, rng);
            let trial_bits =
                binomial_crossover(&target.solution.bits, &mutant_bits, params.cr_value, rng);
            let trial = instance.repair_and_evaluate(&trial_bits, rng);
            next.push(if trial.fitness > target.solution.fitness {
                DbdeIndividual { solution: trial }
            } else {
                target.clone()
            });
        }
        self.population = next;
        self.generation += 1;
        Ok(())
    }
}
