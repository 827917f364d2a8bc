//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p qevo --test acceptance -- --nocapture` to see
//! the per-criterion output.

use std::sync::OnceLock;
use std::time::Instant;

use rand::Rng;

use qevo::aqde::{sample_cr, sample_f};
use qevo::bench::{
    emit_summary, emit_trace, generate_seeded, run_campaign, AlgoParams, Algorithm, InstanceSource,
    RunConfig, RunStats,
};
use qevo::knapsack::KnapsackInstance;
use qevo::qea::{rotation_angle, AmplitudeIndividual};
use qevo::rng::derive_stream;

fn pass(criterion: &str) {
    println!("ACCEPTANCE {criterion}: PASS");
}

fn brute_force_optimum(inst: &KnapsackInstance) -> u64 {
    let m = inst.item_count();
    let mut best = 0u64;
    for mask in 0u32..(1u32 << m) {
        let bits: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        if inst.is_feasible(&bits).unwrap() {
            best = best.max(inst.fitness(&bits).unwrap());
        }
    }
    best
}

// ---------------------------------------------------------------------
// Shared m=100 campaign fixture for criteria 2, 3, 4 and 10. Ordering is
// checked with one permitted retry under a fresh master seed.

struct CampaignSet {
    optimum: u64,
    aqde: RunStats,
    dbde: RunStats,
    qea: RunStats,
    ordering_ok: bool,
    used_retry: bool,
}

static CAMPAIGNS: OnceLock<CampaignSet> = OnceLock::new();

fn campaign_config(algorithm: Algorithm, master_seed: u64) -> RunConfig {
    RunConfig {
        algorithm,
        source: InstanceSource::Generate {
            item_count: 100,
            seed: 0xC0FFEE,
        },
        population_size: 30,
        max_generations: 1000,
        run_count: 30,
        master_seed,
        params: AlgoParams::default(),
    }
}

fn ordering_gaps(aqde: &RunStats, dbde: &RunStats, qea: &RunStats) -> bool {
    aqde.mean_best - dbde.mean_best >= 1.0 && dbde.mean_best - qea.mean_best >= 1.0
}

fn campaigns() -> &'static CampaignSet {
    CAMPAIGNS.get_or_init(|| {
        let instance = generate_seeded(100, 0xC0FFEE).unwrap();
        let optimum = instance.optimal_profit().unwrap();
        let mut used_retry = false;
        let mut result = None;
        for master_seed in [1001u64, 20_240_817] {
            let aqde = run_campaign(&campaign_config(Algorithm::Aqde, master_seed)).unwrap();
            let dbde = run_campaign(&campaign_config(Algorithm::Dbde, master_seed)).unwrap();
            let qea = run_campaign(&campaign_config(Algorithm::Qea, master_seed)).unwrap();
            let ok = ordering_gaps(&aqde, &dbde, &qea);
            result = Some((aqde, dbde, qea, ok));
            if ok {
                break;
            }
            used_retry = true;
        }
        let (aqde, dbde, qea, ordering_ok) = result.unwrap();
        CampaignSet {
            optimum,
            aqde,
            dbde,
            qea,
            ordering_ok,
            used_retry,
        }
    })
}

// ---------------------------------------------------------------------

#[test]
fn criterion_01_oracle_matches_enumeration() {
    let start = Instant::now();
    let mut rng = derive_stream(0xACC1, 0);
    for m in [5usize, 10, 15] {
        for _ in 0..100 {
            let inst = KnapsackInstance::generate(m, &mut rng).unwrap();
            assert_eq!(
                inst.optimal_profit().unwrap(),
                brute_force_optimum(&inst),
                "oracle mismatch at m={m}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass("criterion 1 (oracle equals exhaustive enumeration, m in {5,10,15})");
}

#[test]
fn criterion_02_per_run_bests_bounded_by_optimum() {
    // m=100: the full shared campaigns; m=250/500: shorter campaigns,
    // all three algorithms (the criterion pins the bound, not the sizes).
    let set = campaigns();
    for stats in [&set.aqde, &set.dbde, &set.qea] {
        assert!(stats.per_run_best.iter().all(|&b| b <= set.optimum));
    }
    for items in [250usize, 500] {
        let instance = generate_seeded(items, 0xC0FFEE + items as u64).unwrap();
        let optimum = instance.optimal_profit().unwrap();
        for algorithm in [Algorithm::Aqde, Algorithm::Dbde, Algorithm::Qea] {
            let config = RunConfig {
                algorithm,
                source: InstanceSource::Generate {
                    item_count: items,
                    seed: 0xC0FFEE + items as u64,
                },
                population_size: 30,
                max_generations: 100,
                run_count: 3,
                master_seed: 7,
                params: AlgoParams::default(),
            };
            let stats = run_campaign(&config).unwrap();
            assert!(
                stats.per_run_best.iter().all(|&b| b <= optimum),
                "{} exceeded the optimum at m={items}",
                algorithm.as_str()
            );
        }
    }
    pass("criterion 2 (per-run bests never exceed the DP optimum, m in {100,250,500})");
}

#[test]
fn criterion_03_algorithm_ordering() {
    let set = campaigns();
    assert!(
        set.ordering_ok,
        "mean_best ordering failed even after one reseeded retry: \
         aqde={:.3} dbde={:.3} qea={:.3}",
        set.aqde.mean_best, set.dbde.mean_best, set.qea.mean_best
    );
    println!(
        "  mean_best: aqde={:.3} dbde={:.3} qea={:.3}{}",
        set.aqde.mean_best,
        set.dbde.mean_best,
        set.qea.mean_best,
        if set.used_retry {
            " (after one reseeded retry)"
        } else {
            ""
        }
    );
    pass("criterion 3 (mean_best AQDE > DBDE > QEA with gaps >= 1.0)");
}

#[test]
fn criterion_04_convergence_shape() {
    let set = campaigns();
    let last = set.aqde.mean_trace.len() - 1;
    assert!(set.aqde.mean_trace[last] > set.qea.mean_trace[last]);
    assert!(set.aqde.mean_trace[last] > set.dbde.mean_trace[last]);
    // Early-generation behavior is logged, not asserted.
    let below_both = (0..=50.min(last))
        .filter(|&g| {
            set.aqde.mean_trace[g] < set.qea.mean_trace[g]
                && set.aqde.mean_trace[g] < set.dbde.mean_trace[g]
        })
        .count();
    println!(
        "  first 50 generations: AQDE mean trace below both baselines at {below_both}/51 points"
    );
    pass("criterion 4 (AQDE mean trace highest at generation 1000)");
}

#[test]
fn criterion_05_adaptive_parameter_distributions() {
    let mut rng = derive_stream(0xACC5, 0);
    let n = 1_000_000;

    let mut sum = 0.0;
    let mut max = 0.0f64;
    for _ in 0..n {
        let f = sample_f(&mut rng);
        sum += f;
        max = max.max(f);
    }
    let mean = sum / n as f64;
    assert!((mean - 0.025).abs() <= 0.0005, "F mean {mean}");
    assert!(max < 0.1, "F max {max}");

    let mut inside = 0usize;
    for _ in 0..n {
        let cr = sample_cr(&mut rng);
        if (0.35..=0.65).contains(&cr) {
            inside += 1;
        }
    }
    let frac = inside as f64 / n as f64;
    assert!(frac >= 0.997, "CR inside fraction {frac}");
    pass("criterion 5 (F mean 0.025 +/- 0.0005 and < 0.1; CR within [0.35,0.65] >= 99.7%)");
}

#[test]
fn criterion_06_unitarity_after_many_rotations() {
    let mut rng = derive_stream(0xACC6, 0);
    let mut q = AmplitudeIndividual::uniform(1);
    for _ in 0..100_000 {
        let angle: f64 = rng.gen_range(-0.05..0.05);
        q.apply_rotation(&[angle]);
    }
    let (alpha, beta) = q.pairs()[0];
    let drift = (alpha * alpha + beta * beta - 1.0).abs();
    assert!(drift < 1e-9, "drift {drift}");
    pass("criterion 6 (|alpha^2 + beta^2 - 1| < 1e-9 after 1e5 rotations)");
}

#[test]
fn criterion_07_rotation_table_exhaustive() {
    let step = 0.01 * std::f64::consts::PI;
    for x in [false, true] {
        for b in [false, true] {
            for not_worse in [false, true] {
                let expected = match (x, b, not_worse) {
                    (false, true, false) => step,
                    (true, false, false) => -step,
                    _ => 0.0,
                };
                assert_eq!(rotation_angle(x, b, not_worse), expected);
            }
        }
    }
    pass("criterion 7 (all 8 lookup-table rows return the tabulated angle)");
}

#[test]
fn criterion_08_repair_totality() {
    let mut rng = derive_stream(0xACC8, 0);
    for m in [5usize, 50, 500] {
        let inst = KnapsackInstance::generate(m, &mut rng).unwrap();
        for _ in 0..10_000 {
            let bits: Vec<bool> = (0..m).map(|_| rng.gen_bool(0.7)).collect();
            let repaired = inst.repair(&bits, &mut rng);
            assert!(
                inst.is_feasible(&repaired).unwrap(),
                "infeasible repair at m={m}"
            );
        }
    }
    // A feasible solution that no single item can extend comes back as-is.
    let inst = KnapsackInstance::new(vec![2, 3, 4], vec![7, 8, 9], 9).unwrap();
    for _ in 0..100 {
        assert_eq!(
            inst.repair(&[true, false, false], &mut rng),
            vec![true, false, false]
        );
    }
    pass("criterion 8 (repair always feasible; non-augmentable inputs unchanged)");
}

#[test]
fn criterion_09_bench_cli_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_qevo");
    let instance = dir.path().join("inst.txt");

    let status = std::process::Command::new(bin)
        .args(["gen", "--items", "50", "--seed", "11"])
        .arg("--out")
        .arg(&instance)
        .status()
        .unwrap();
    assert!(status.success());

    let run = |tag: &str| {
        let summary = dir.path().join(format!("summary_{tag}.txt"));
        let trace = dir.path().join(format!("trace_{tag}.csv"));
        let status = std::process::Command::new(bin)
            .args(["bench", "--algo", "aqde", "--pop", "10", "--gens", "50"])
            .args(["--runs", "3", "--seed", "99"])
            .arg("--instance")
            .arg(&instance)
            .arg("--summary")
            .arg(&summary)
            .arg("--trace")
            .arg(&trace)
            .status()
            .unwrap();
        assert!(status.success());
        (
            std::fs::read(&summary).unwrap(),
            std::fs::read(&trace).unwrap(),
        )
    };
    let (summary_a, trace_a) = run("a");
    let (summary_b, trace_b) = run("b");
    assert_eq!(summary_a, summary_b);
    assert_eq!(trace_a, trace_b);
    pass("criterion 9 (two identical bench invocations produce byte-identical files)");
}

#[test]
fn criterion_10_traces_monotone() {
    let set = campaigns();
    let dir = tempfile::tempdir().unwrap();
    for (name, stats) in [("aqde", &set.aqde), ("dbde", &set.dbde), ("qea", &set.qea)] {
        assert!(
            stats.mean_trace.windows(2).all(|w| w[0] <= w[1]),
            "{name} mean trace decreased"
        );
        let path = dir.path().join(format!("{name}.csv"));
        emit_trace(stats, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let values: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(values.len(), 1001);
        assert!(values.windows(2).all(|w| w[0] <= w[1]));

        let summary_path = dir.path().join(format!("{name}_summary.txt"));
        emit_summary(
            &campaign_config(Algorithm::Aqde, 1001),
            stats,
            &summary_path,
        )
        .unwrap();
    }
    pass("criterion 10 (every emitted trace is non-decreasing over 1000 generations)");
}
