//! Population-based binary optimizers for the 0-1 knapsack problem.
//!
//! Three solvers share a common problem model and repair operator:
//!
//! - [`aqde`]: differential evolution acting on Q-bit angles, with
//!   per-generation adaptive mutation and crossover parameters
//! - [`qea`]: the quantum-inspired evolutionary algorithm baseline
//!   (amplitude Q-bits, rotation gate, best-solution pool, migration)
//! - [`dbde`]: discrete binary differential evolution (sigmoid
//!   discretization of real-valued mutants)
//!
//! The [`knapsack`] module holds the instance model, strongly correlated
//! instance generation, the randomized repair operator and an exact dynamic
//! programming oracle. The [`bench`] module runs seeded multi-run campaigns
//! and writes summary/trace files.

pub mod aqde;
pub mod bench;
pub mod dbde;
pub mod error;
pub mod knapsack;
pub mod qea;
pub mod rng;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
