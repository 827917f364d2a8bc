use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qevo::bench::{
    emit_summary, emit_trace, generate_seeded, run_single, AlgoParams, Algorithm, InstanceSource,
    RunConfig, RunStats,
};
use qevo::knapsack::KnapsackInstance;
use qevo::Result;

#[derive(Parser)]
#[command(
    name = "qevo",
    about = "Population-based binary optimizers for the 0-1 knapsack problem",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a strongly correlated instance file
    Gen {
        #[arg(long)]
        items: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the exact optimum of an instance (dynamic programming)
    Oracle {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Run one algorithm once and print the best profit found
    Solve {
        #[arg(long, value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pop: usize,
        #[arg(long)]
        gens: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
    /// Run a multi-run campaign and write summary and trace files
    Bench {
        #[arg(long, value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pop: usize,
        #[arg(long)]
        gens: u32,
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        summary: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
    },
}

fn parse_algo(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: qevo::Error| e.to_string())
}

fn parse_params(pairs: &[String]) -> Result<AlgoParams> {
    let mut params = AlgoParams::default();
    for pair in pairs {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            qevo::Error::InvalidConfiguration(format!("expected key=value, got '{pair}'"))
        })?;
        params.set(key, value)?;
    }
    Ok(params)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { items, seed, out } => {
            let instance = generate_seeded(items, seed)?;
            instance.save(&out)?;
        }
        Command::Oracle { instance } => {
            let instance = KnapsackInstance::load(&instance)?;
            println!("{}", instance.optimal_profit()?);
        }
        Command::Solve {
            algo,
            instance,
            pop,
            gens,
            seed,
            trace,
            params,
        } => {
            let config = RunConfig {
                algorithm: algo,
                source: InstanceSource::File(instance),
                population_size: pop,
                max_generations: gens,
                run_count: 1,
                master_seed: seed,
                params: parse_params(&params)?,
            };
            let (best, run_trace) = run_single(&config, 0)?;
            if let Some(path) = trace {
                let stats = RunStats {
                    per_run_best: vec![best],
                    mean_best: best as f64,
                    std_best: 0.0,
                    mean_trace: run_trace.0.iter().map(|&v| v as f64).collect(),
                };
                emit_trace(&stats, &path)?;
            }
            println!("{best}");
        }
        Command::Bench {
            algo,
            instance,
            pop,
            gens,
            runs,
            seed,
            summary,
            trace,
            params,
        } => {
            let config = RunConfig {
                algorithm: algo,
                source: InstanceSource::File(instance),
                population_size: pop,
                max_generations: gens,
                run_count: runs,
                master_seed: seed,
                params: parse_params(&params)?,
            };
            let stats = qevo::bench::run_campaign(&config)?;
            emit_summary(&config, &stats, &summary)?;
            emit_trace(&stats, &trace)?;
            println!(
                "mean_best={:.6} std_best={:.6}",
                stats.mean_best, stats.std_best
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
