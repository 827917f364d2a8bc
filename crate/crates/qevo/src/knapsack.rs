//! 0-1 knapsack problem model: instances, fitness, feasibility, the
//! randomized repair operator, an exact oracle and instance file I/O.
//!
//! Capacity is stored in doubled weight units (`2W`, always an integer for
//! generated instances) so feasibility checks are exact integer
//! comparisons with no floating-point tolerance.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::Rng;

use crate::{Error, Result};

/// Largest total weight accepted by the dense DP oracle.
const DP_WEIGHT_GUARD: u64 = 10_000_000;

/// A 0-1 knapsack instance: `m` items with integer weights and profits and
/// a half-integer capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    weights: Vec<u64>,
    profits: Vec<u64>,
    /// Capacity in doubled weight units (2W).
    capacity_x2: u64,
}

/// A concrete item selection with its evaluated profit. Only feasible
/// selections carry a fitness; construct through [`KnapsackInstance::evaluate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySolution {
    pub bits: Vec<bool>,
    pub fitness: u64,
}

impl KnapsackInstance {
    pub fn new(weights: Vec<u64>, profits: Vec<u64>, capacity_x2: u64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument(
                "instance must have at least one item".into(),
            ));
        }
        if weights.len() != profits.len() {
            return Err(Error::InvalidArgument(format!(
                "weights/profits length mismatch: {} vs {}",
                weights.len(),
                profits.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument("every weight must be >= 1".into()));
        }
        if profits.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("every profit must be >= 1".into()));
        }
        Ok(Self {
            weights,
            profits,
            capacity_x2,
        })
    }

    /// Strongly correlated instance: weights uniform in {1..10},
    /// profit = weight + 5, capacity = half the weight sum.
    pub fn generate<R: Rng>(item_count: usize, rng: &mut R) -> Result<Self> {
        if item_count == 0 {
            return Err(Error::InvalidArgument("item_count must be >= 1".into()));
        }
        let weights: Vec<u64> = (0..item_count).map(|_| rng.gen_range(1..=10)).collect();
        let profits: Vec<u64> = weights.iter().map(|w| w + 5).collect();
        let capacity_x2 = weights.iter().sum();
        Ok(Self {
            weights,
            profits,
            capacity_x2,
        })
    }

    pub fn item_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    /// Capacity W as a real number (half-integer for generated instances).
    pub fn capacity(&self) -> f64 {
        self.capacity_x2 as f64 / 2.0
    }

    pub fn capacity_x2(&self) -> u64 {
        self.capacity_x2
    }

    fn check_len(&self, bits: &[bool]) -> Result<()> {
        if bits.len() != self.item_count() {
            return Err(Error::InvalidArgument(format!(
                "bit vector length {} does not match item count {}",
                bits.len(),
                self.item_count()
            )));
        }
        Ok(())
    }

    fn selected_weight(&self, bits: &[bool]) -> u64 {
        self.weights
            .iter()
            .zip(bits)
            .filter(|(_, &b)| b)
            .map(|(&w, _)| w)
            .sum()
    }

    /// True iff the selected weight does not exceed the capacity.
    pub fn is_feasible(&self, bits: &[bool]) -> Result<bool> {
        self.check_len(bits)?;
        Ok(self.selected_weight(bits) * 2 <= self.capacity_x2)
    }

    /// Total profit of a feasible selection. Infeasible input is a
    /// constraint-violation error: it means a repair call was skipped.
    pub fn fitness(&self, bits: &[bool]) -> Result<u64> {
        if !self.is_feasible(bits)? {
            return Err(Error::ConstraintViolation {
                weight: self.selected_weight(bits),
                capacity: self.capacity(),
            });
        }
        Ok(self
            .profits
            .iter()
            .zip(bits)
            .filter(|(_, &b)| b)
            .map(|(&p, _)| p)
            .sum())
    }

    /// Repairs and evaluates in one step.
    pub fn evaluate(&self, bits: &[bool]) -> Result<BinarySolution> {
        let fitness = self.fitness(bits)?;
        Ok(BinarySolution {
            bits: bits.to_vec(),
            fitness,
        })
    }

    /// Randomized repair. Phase 1 removes uniformly chosen selected items
    /// until the constraint holds. Phase 2 then adds uniformly chosen
    /// unselected items, without replacement, until an addition violates
    /// the constraint; that item is removed and the procedure stops.
    pub fn repair<R: Rng>(&self, bits: &[bool], rng: &mut R) -> Vec<bool> {
        assert_eq!(
            bits.len(),
            self.item_count(),
            "repair: bit vector length mismatch"
        );
        let mut bits = bits.to_vec();
        let mut weight_x2: u64 = self.selected_weight(&bits) * 2;

        let mut selected: Vec<usize> = (0..bits.len()).filter(|&i| bits[i]).collect();
        while weight_x2 > self.capacity_x2 {
            let k = rng.gen_range(0..selected.len());
            let item = selected.swap_remove(k);
            bits[item] = false;
            weight_x2 -= self.weights[item] * 2;
        }

        let mut unselected: Vec<usize> = (0..bits.len()).filter(|&i| !bits[i]).collect();
        while !unselected.is_empty() {
            let k = rng.gen_range(0..unselected.len());
            let item = unselected.swap_remove(k);
            bits[item] = true;
            weight_x2 += self.weights[item] * 2;
            if weight_x2 > self.capacity_x2 {
                bits[item] = false;
                break;
            }
        }
        bits
    }

    /// Repair followed by evaluation; the result is always feasible.
    pub fn repair_and_evaluate<R: Rng>(&self, bits: &[bool], rng: &mut R) -> BinarySolution {
        let repaired = self.repair(bits, rng);
        let fitness = self.fitness(&repaired).expect("repair output is feasible");
        BinarySolution {
            bits: repaired,
            fitness,
        }
    }

    /// Exact maximum profit via dynamic programming over total weight.
    /// Exists for testing and the `oracle` CLI command, not for the
    /// algorithms themselves.
    pub fn optimal_profit(&self) -> Result<u64> {
        let total_weight: u64 = self.weights.iter().sum();
        if total_weight > DP_WEIGHT_GUARD {
            return Err(Error::UnsupportedInstance(format!(
                "total weight {total_weight} exceeds the DP guard {DP_WEIGHT_GUARD}"
            )));
        }
        // Weights are integral, so the effective capacity is floor(W).
        let cap = (self.capacity_x2 / 2).min(total_weight) as usize;
        let mut table = vec![0u64; cap + 1];
        for (&w, &p) in self.weights.iter().zip(&self.profits) {
            let w = w as usize;
            if w > cap {
                continue;
            }
            for c in (w..=cap).rev() {
                table[c] = table[c].max(table[c - w] + p);
            }
        }
        Ok(table[cap])
    }

    fn capacity_text(&self) -> String {
        if self.capacity_x2 % 2 == 0 {
            format!("{}", self.capacity_x2 / 2)
        } else {
            format!("{}.5", self.capacity_x2 / 2)
        }
    }

    /// Writes the line-oriented instance format:
    /// `m W` on the first line, then one `w_i p_i` pair per line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.item_count(), self.capacity_text());
        for (&w, &p) in self.weights.iter().zip(&self.profits) {
            let _ = writeln!(out, "{w} {p}");
        }
        fs::write(path, out).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let parse_err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };

        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty file".into()))?;
        let mut parts = header.split_whitespace();
        let item_count: usize = parts
            .next()
            .ok_or_else(|| parse_err(1, "missing item count".into()))?
            .parse()
            .map_err(|_| parse_err(1, "item count is not a positive integer".into()))?;
        let capacity_x2 = parts
            .next()
            .ok_or_else(|| parse_err(1, "missing capacity".into()))
            .and_then(|s| {
                parse_half_integer(s)
                    .ok_or_else(|| parse_err(1, format!("capacity '{s}' is not a half-integer")))
            })?;
        if parts.next().is_some() {
            return Err(parse_err(1, "trailing tokens after header".into()));
        }
        if item_count == 0 {
            return Err(parse_err(1, "item count must be >= 1".into()));
        }

        let mut weights = Vec::with_capacity(item_count);
        let mut profits = Vec::with_capacity(item_count);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if weights.len() == item_count {
                return Err(parse_err(
                    line_no,
                    format!("expected {item_count} item lines, found more"),
                ));
            }
            let mut parts = line.split_whitespace();
            let w: u64 = parts
                .next()
                .unwrap()
                .parse()
                .map_err(|_| parse_err(line_no, "weight is not a positive integer".into()))?;
            let p: u64 = parts
                .next()
                .ok_or_else(|| parse_err(line_no, "missing profit".into()))?
                .parse()
                .map_err(|_| parse_err(line_no, "profit is not a positive integer".into()))?;
            if parts.next().is_some() {
                return Err(parse_err(line_no, "trailing tokens after item line".into()));
            }
            if w == 0 || p == 0 {
                return Err(parse_err(
                    line_no,
                    "weights and profits must be >= 1".into(),
                ));
            }
            weights.push(w);
            profits.push(p);
        }
        if weights.len() != item_count {
            return Err(parse_err(
                text.lines().count(),
                format!(
                    "expected {} item lines, found {}",
                    item_count,
                    weights.len()
                ),
            ));
        }
        Self::new(weights, profits, capacity_x2)
    }
}

/// Parses "263", "263.0" or "263.5" into doubled units. Other fractional
/// parts are rejected: capacities are half-integers in this format.
fn parse_half_integer(s: &str) -> Option<u64> {
    match s.split_once('.') {
        None => s.parse::<u64>().ok().map(|v| v * 2),
        Some((int, frac)) => {
            let base: u64 = int.parse().ok()?;
            match frac {
                "0" | "00" => Some(base * 2),
                "5" | "50" => Some(base * 2 + 1),
                _ => None,
            }
        }
    }
}
