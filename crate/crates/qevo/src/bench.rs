//! Seeded benchmark campaigns: repeated runs of one algorithm on one
//! instance, convergence traces, summary statistics and file emission.

use std::env;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use crate::aqde::{AqdeConfig, AqdeState};
use crate::dbde::{DbdeParams, DbdeState};
use crate::knapsack::KnapsackInstance;
use crate::qea::{MigrationConfig, QeaState};
use crate::rng::derive_stream;
use crate::{Error, Result};

/// Stream index reserved for instance generation so it never collides
/// with per-run streams (which use the run index).
const INSTANCE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Aqde,
    Qea,
    Dbde,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Aqde => "aqde",
            Algorithm::Qea => "qea",
            Algorithm::Dbde => "dbde",
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aqde" => Ok(Algorithm::Aqde),
            "qea" => Ok(Algorithm::Qea),
            "dbde" => Ok(Algorithm::Dbde),
            other => Err(Error::InvalidConfiguration(format!(
                "unknown algorithm '{other}' (expected aqde, qea or dbde)"
            ))),
        }
    }
}

/// Per-algorithm parameter overrides, addressable as `key=value` pairs.
#[derive(Debug, Clone)]
pub struct AlgoParams {
    pub qea_global_period: u32,
    pub qea_local_period: u32,
    pub qea_local_group: usize,
    pub dbde_f: f64,
    pub dbde_cr: f64,
    pub aqde_f_per_individual: bool,
}

impl Default for AlgoParams {
    fn default() -> Self {
        let migration = MigrationConfig::default();
        let dbde = DbdeParams::default();
        Self {
            qea_global_period: migration.global_period,
            qea_local_period: migration.local_period,
            qea_local_group: migration.local_group,
            dbde_f: dbde.f_value,
            dbde_cr: dbde.cr_value,
            aqde_f_per_individual: false,
        }
    }
}

impl AlgoParams {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad =
            |what: &str| Error::InvalidConfiguration(format!("invalid value '{value}' for {what}"));
        match key {
            "qea.global_period" => self.qea_global_period = value.parse().map_err(|_| bad(key))?,
            "qea.local_period" => self.qea_local_period = value.parse().map_err(|_| bad(key))?,
            "qea.local_group" => {
                self.qea_local_group = value.parse().map_err(|_| bad(key))?;
                if self.qea_local_group == 0 {
                    return Err(bad(key));
                }
            }
            "dbde.f" => self.dbde_f = value.parse().map_err(|_| bad(key))?,
            "dbde.cr" => self.dbde_cr = value.parse().map_err(|_| bad(key))?,
            "aqde.f_per_individual" => {
                self.aqde_f_per_individual = value.parse().map_err(|_| bad(key))?
            }
            other => {
                return Err(Error::InvalidConfiguration(format!(
                    "unknown parameter key '{other}'"
                )))
            }
        }
        Ok(())
    }

    fn migration(&self) -> MigrationConfig {
        MigrationConfig {
            global_period: self.qea_global_period,
            local_period: self.qea_local_period,
            local_group: self.qea_local_group,
        }
    }

    fn dbde(&self) -> DbdeParams {
        DbdeParams {
            f_value: self.dbde_f,
            cr_value: self.dbde_cr,
        }
    }

    fn aqde(&self) -> AqdeConfig {
        AqdeConfig {
            f_per_individual: self.aqde_f_per_individual,
        }
    }
}

#[derive(Debug, Clone)]
pub enum InstanceSource {
    File(PathBuf),
    Generate { item_count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub source: InstanceSource,
    pub population_size: usize,
    pub max_generations: u32,
    pub run_count: usize,
    pub master_seed: u64,
    pub params: AlgoParams,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let min_pop = match self.algorithm {
            Algorithm::Qea => 1,
            Algorithm::Aqde | Algorithm::Dbde => 4,
        };
        if self.population_size < min_pop {
            return Err(Error::InvalidConfiguration(format!(
                "{} needs a population of at least {min_pop}, got {}",
                self.algorithm.as_str(),
                self.population_size
            )));
        }
        if self.max_generations == 0 {
            return Err(Error::InvalidConfiguration(
                "max_generations must be >= 1".into(),
            ));
        }
        if self.run_count == 0 {
            return Err(Error::InvalidConfiguration("run_count must be >= 1".into()));
        }
        if let InstanceSource::Generate { item_count, .. } = self.source {
            if item_count == 0 {
                return Err(Error::InvalidConfiguration(
                    "item_count must be >= 1".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn resolve_instance(&self) -> Result<KnapsackInstance> {
        match &self.source {
            InstanceSource::File(path) => KnapsackInstance::load(path),
            InstanceSource::Generate { item_count, seed } => {
                Ok(generate_seeded(*item_count, *seed)?)
            }
        }
    }
}

/// Deterministic instance generation from a bare seed; shared by the
/// `gen` CLI command and `--items`-style sources so both agree.
pub fn generate_seeded(item_count: usize, seed: u64) -> Result<KnapsackInstance> {
    let mut rng = derive_stream(seed, INSTANCE_STREAM);
    KnapsackInstance::generate(item_count, &mut rng)
}

/// Best-so-far fitness per generation; index 0 is the state right after
/// initialization. Non-decreasing by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceTrace(pub Vec<u64>);

/// Aggregated campaign results.
#[derive(Debug, Clone)]
pub struct RunStats {
    pub per_run_best: Vec<u64>,
    pub mean_best: f64,
    pub std_best: f64,
    pub mean_trace: Vec<f64>,
}

/// Executes one run. The random stream is derived from
/// (master_seed, run_index), so runs are independent and reproducible.
pub fn run_single(config: &RunConfig, run_index: usize) -> Result<(u64, ConvergenceTrace)> {
    config.validate()?;
    let instance = config.resolve_instance()?;
    run_on_instance(config, &instance, run_index)
}

fn run_on_instance(
    config: &RunConfig,
    instance: &KnapsackInstance,
    run_index: usize,
) -> Result<(u64, ConvergenceTrace)> {
    let mut rng = derive_stream(config.master_seed, run_index as u64);
    let gens = config.max_generations;
    let mut trace = Vec::with_capacity(gens as usize + 1);

    match config.algorithm {
        Algorithm::Aqde => {
            let cfg = config.params.aqde();
            let mut state = AqdeState::init(instance, config.population_size, &mut rng)?;
            let mut best = state.best_fitness();
            trace.push(best);
            for _ in 0..gens {
                state.step(instance, &cfg, &mut rng)?;
                best = best.max(state.best_fitness());
                trace.push(best);
            }
        }
        Algorithm::Qea => {
            let cfg = config.params.migration();
            let mut state = QeaState::init(instance, config.population_size, &mut rng);
            let mut best = state.best_fitness();
            trace.push(best);
            for _ in 0..gens {
                state.step(instance, &cfg, &mut rng);
                best = best.max(state.best_fitness());
                trace.push(best);
            }
        }
        Algorithm::Dbde => {
            let params = config.params.dbde();
            let mut state = DbdeState::init(instance, config.population_size, &mut rng)?;
            let mut best = state.best_fitness();
            trace.push(best);
            for _ in 0..gens {
                state.step(instance, params, &mut rng)?;
                best = best.max(state.best_fitness());
                trace.push(best);
            }
        }
    }
    let best = *trace.last().unwrap();
    Ok((best, ConvergenceTrace(trace)))
}

fn thread_cap(run_count: usize) -> Result<usize> {
    let cap = match env::var("QEVO_THREADS") {
        Ok(s) => s.parse::<usize>().map_err(|_| {
            Error::InvalidConfiguration(format!("QEVO_THREADS='{s}' is not an integer"))
        })?,
        Err(_) => thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    };
    Ok(cap.max(1).min(run_count))
}

/// Runs `run_count` independent runs against one shared instance and
/// aggregates them. Runs may execute in parallel (capped by the
/// QEVO_THREADS environment variable; 0 means sequential); aggregation
/// is ordered by run index, so results do not depend on scheduling.
pub fn run_campaign(config: &RunConfig) -> Result<RunStats> {
    config.validate()?;
    let instance = config.resolve_instance()?;
    let n = config.run_count;
    let threads = thread_cap(n)?;

    let mut runs: Vec<Option<(u64, ConvergenceTrace)>> = vec![None; n];
    if threads <= 1 {
        for (i, slot) in runs.iter_mut().enumerate() {
            *slot = Some(run_on_instance(config, &instance, i)?);
        }
    } else {
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        thread::scope(|scope| {
            for _ in 0..threads {
                let tx = tx.clone();
                let next = &next;
                let instance = &instance;
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n {
                        break;
                    }
                    let result = run_on_instance(config, instance, i);
                    if tx.send((i, result)).is_err() {
                        break;
                    }
                });
            }
        });
        drop(tx);
        for (i, result) in rx {
            runs[i] = Some(result?);
        }
    }

    let runs: Vec<(u64, ConvergenceTrace)> = runs.into_iter().map(|r| r.unwrap()).collect();
    Ok(aggregate(&runs))
}

fn aggregate(runs: &[(u64, ConvergenceTrace)]) -> RunStats {
    let n = runs.len();
    let per_run_best: Vec<u64> = runs.iter().map(|(b, _)| *b).collect();
    let mean_best = per_run_best.iter().sum::<u64>() as f64 / n as f64;
    let std_best = if n < 2 {
        0.0
    } else {
        let ss: f64 = per_run_best
            .iter()
            .map(|&b| {
                let d = b as f64 - mean_best;
                d * d
            })
            .sum();
        (ss / (n - 1) as f64).sqrt()
    };
    let trace_len = runs[0].1 .0.len();
    let mean_trace: Vec<f64> = (0..trace_len)
        .map(|g| runs.iter().map(|(_, t)| t.0[g] as f64).sum::<f64>() / n as f64)
        .collect();
    RunStats {
        per_run_best,
        mean_best,
        std_best,
        mean_trace,
    }
}

fn write_file(path: &Path, contents: String) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Structured text summary: algorithm, config echo, aggregate statistics
/// and the per-run best values.
pub fn emit_summary(config: &RunConfig, stats: &RunStats, path: &Path) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "algorithm: {}", config.algorithm.as_str());
    match &config.source {
        InstanceSource::File(p) => {
            let _ = writeln!(out, "instance: {}", p.display());
        }
        InstanceSource::Generate { item_count, seed } => {
            let _ = writeln!(out, "instance: generated items={item_count} seed={seed}");
        }
    }
    let _ = writeln!(out, "population: {}", config.population_size);
    let _ = writeln!(out, "generations: {}", config.max_generations);
    let _ = writeln!(out, "runs: {}", config.run_count);
    let _ = writeln!(out, "master_seed: {}", config.master_seed);
    let _ = writeln!(out, "mean_best: {:.6}", stats.mean_best);
    let _ = writeln!(out, "std_best: {:.6}", stats.std_best);
    let per_run: Vec<String> = stats.per_run_best.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "per_run_best: {}", per_run.join(" "));
    write_file(path, out)
}

/// CSV trace: header plus one `generation,mean_best` row per generation
/// including generation 0.
pub fn emit_trace(stats: &RunStats, path: &Path) -> Result<()> {
    let mut out = String::from("generation,mean_best\n");
    for (g, v) in stats.mean_trace.iter().enumerate() {
        let _ = writeln!(out, "{g},{v:.6}");
    }
    write_file(path, out)
}
