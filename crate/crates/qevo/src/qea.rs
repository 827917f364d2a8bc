//! Quantum-inspired evolutionary algorithm baseline.
//!
//! Individuals are vectors of amplitude pairs (alpha, beta) with
//! alpha^2 + beta^2 = 1; |beta|^2 is the probability of observing a 1.
//! Each generation observes every individual, repairs and evaluates the
//! binary strings, rotates the amplitudes toward the global best via the
//! lookup-table angle, and maintains a per-individual pool of best
//! solutions with periodic migration.

use std::f64::consts::PI;

use rand::Rng;

use crate::knapsack::{BinarySolution, KnapsackInstance};

/// Rotation step magnitude from the lookup table.
const ROTATION_STEP: f64 = 0.01 * PI;

/// One Q-bit individual: m amplitude pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeIndividual {
    pairs: Vec<(f64, f64)>,
}

impl AmplitudeIndividual {
    /// Uniform superposition: every pair set to (1/sqrt(2), 1/sqrt(2)).
    pub fn uniform(len: usize) -> Self {
        let v = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            pairs: vec![(v, v); len],
        }
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Samples a bit vector: bit j is 1 iff rand() < beta_j^2.
    pub fn observe<R: Rng>(&self, rng: &mut R) -> Vec<bool> {
        self.pairs
            .iter()
            .map(|&(_, beta)| rng.gen::<f64>() < beta * beta)
            .collect()
    }

    /// Applies the rotation gate per pair, then re-normalizes to bound
    /// floating-point drift.
    pub fn apply_rotation(&mut self, angles: &[f64]) {
        assert_eq!(angles.len(), self.pairs.len());
        for (pair, &angle) in self.pairs.iter_mut().zip(angles) {
            let (alpha, beta) = *pair;
            let (sin, cos) = angle.sin_cos();
            let a = alpha * cos - beta * sin;
            let b = alpha * sin + beta * cos;
            let norm = (a * a + b * b).sqrt();
            *pair = (a / norm, b / norm);
        }
    }
}

/// Lookup-table rotation angle for one Q-bit. `x_not_worse` is the
/// comparison f(x) >= f(b) between the observed solution and the global
/// best. Only two of the eight rows are nonzero.
pub fn rotation_angle(x_bit: bool, b_bit: bool, x_not_worse: bool) -> f64 {
    match (x_bit, b_bit, x_not_worse) {
        (false, true, false) => ROTATION_STEP,
        (true, false, false) => -ROTATION_STEP,
        _ => 0.0,
    }
}

/// Migration mode: overwrite pool slots with the global best, or with
/// each group's fittest member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MigrationMode {
    Global,
    Local,
}

/// Migration schedule. A period of 0 disables that mode.
#[derive(Debug, Clone)]
pub struct MigrationConfig {
    pub global_period: u32,
    pub local_period: u32,
    pub local_group: usize,
}

impl Default for MigrationConfig {
    fn default() -> Self {
        Self {
            global_period: 100,
            local_period: 0,
            local_group: 5,
        }
    }
}

/// Full QEA run state: amplitude population, best-solution pool B,
/// global best b and the generation counter.
#[derive(Debug, Clone)]
pub struct QeaState {
    pub population: Vec<AmplitudeIndividual>,
    pub pool: Vec<BinarySolution>,
    pub global_best: BinarySolution,
    pub generation: u32,
}

impl QeaState {
    /// Initializes the population in uniform superposition and fills the
    /// pool from the first observed-and-repaired generation.
    pub fn init<R: Rng>(instance: &KnapsackInstance, population_size: usize, rng: &mut R) -> Self {
        assert!(population_size >= 1, "population size must be >= 1");
        let m = instance.item_count();
        let population: Vec<AmplitudeIndividual> = (0..population_size)
            .map(|_| AmplitudeIndividual::uniform(m))
            .collect();
        let pool: Vec<BinarySolution> = population
            .iter()
            .map(|q| {
                let bits = q.observe(rng);
                instance.repair_and_evaluate(&bits, rng)
            })
            .collect();
        let global_best = pool.iter().max_by_key(|s| s.fitness).unwrap().clone();
        Self {
            population,
            pool,
            global_best,
            generation: 0,
        }
    }

    pub fn best_fitness(&self) -> u64 {
        self.global_best.fitness
    }

    /// One generation: observe, repair, evaluate, rotate toward the global
    /// best, update the pool and global best, then migrate on schedule.
    pub fn step<R: Rng>(
        &mut self,
        instance: &KnapsackInstance,
        cfg: &MigrationConfig,
        rng: &mut R,
    ) {
        let observed: Vec<BinarySolution> = self
            .population
            .iter()
            .map(|q| {
                let bits = q.observe(rng);
                instance.repair_and_evaluate(&bits, rng)
            })
            .collect();

        for (q, x) in self.population.iter_mut().zip(&observed) {
            let x_not_worse = x.fitness >= self.global_best.fitness;
            let angles: Vec<f64> = x
                .bits
                .iter()
                .zip(&self.global_best.bits)
                .map(|(&xb, &bb)| rotation_angle(xb, bb, x_not_worse))
                .collect();
            q.apply_rotation(&angles);
        }

        for (slot, x) in self.pool.iter_mut().zip(observed) {
            if x.fitness > slot.fitness {
                *slot = x;
            }
        }
        if let Some(best) = self.pool.iter().max_by_key(|s| s.fitness) {
            if best.fitness > self.global_best.fitness {
                self.global_best = best.clone();
            }
        }

        self.generation += 1;
        if cfg.global_period > 0 && self.generation % cfg.global_period == 0 {
            self.migrate(MigrationMode::Global, cfg.local_group);
        } else if cfg.local_period > 0 && self.generation % cfg.local_period == 0 {
            self.migrate(MigrationMode::Local, cfg.local_group);
        }
    }

    /// Global mode copies the global best into every pool slot. Local mode
    /// partitions the pool into consecutive groups of `group_size` and
    /// copies each group's fittest member over the group.
    pub fn migrate(&mut self, mode: MigrationMode, group_size: usize) {
        match mode {
            MigrationMode::Global => {
                for slot in &mut self.pool {
                    *slot = self.global_best.clone();
                }
            }
            MigrationMode::Local => {
                assert!(group_size >= 1, "group size must be >= 1");
                for group in self.pool.chunks_mut(group_size) {
                    let best = group.iter().max_by_key(|s| s.fitness).unwrap().clone();
                    for slot in group {
                        *slot = best.clone();
                    }
                }
            }
        }
    }
}
