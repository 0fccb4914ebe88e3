//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.
//!
//! Run with `cargo test -p iotmab-cli --test acceptance`.

use std::f64::consts::E;
use std::time::{Duration, Instant};

use iotmab_cli::runner::{render_summary, render_timeseries};
use iotmab_cli::{run_scenario, run_sweep, Scenario, SweepResult};
use iotmab_core::analytic::{allocation_objective, allocation_success, random_policy_success};
use iotmab_core::bandit::{ChannelPolicy, TsState, Ucb1State};
use iotmab_core::config::{split_to_counts, UNEVEN_SPLIT};
use iotmab_core::oracle::{
    brute_force_allocation, greedy_allocation, optimal_allocation, optimal_real_allocation,
    round_allocation, stationary_capacity,
};
use iotmab_core::{
    lambert_w0, run_simulation, validate_config, Allocation, NetworkConfig, PolicyKind, SimOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

// ---------------------------------------------------------------------------
// Lambert W

fn lambert_correctness() -> Outcome {
    let start = Instant::now();
    let n = 10_000;
    let mut worst = 0.0f64;
    for k in 0..n {
        let x = 10f64.powf(-6.0 + 9.0 * k as f64 / (n - 1) as f64);
        let w = lambert_w0(x).expect("non-negative argument");
        worst = worst.max((w * w.exp() - x).abs() / x.max(1.0));
    }
    let w0 = lambert_w0(0.0).unwrap();
    let we = lambert_w0(E).unwrap();
    let elapsed = start.elapsed();
    let passed = worst <= 1e-12
        && w0.abs() <= 1e-12
        && (we - 1.0).abs() <= 1e-12
        && elapsed < Duration::from_secs(1);
    Outcome::new(
        passed,
        format!(
            "max scaled residual {worst:.2e}, W(0) = {w0}, W(e) - 1 = {:.1e}, {elapsed:.2?}",
            we - 1.0
        ),
    )
}

// ---------------------------------------------------------------------------
// Oracle vs brute force

struct SmallInstance {
    p: f64,
    statics: Vec<usize>,
    d: usize,
}

impl SmallInstance {
    fn config(&self) -> NetworkConfig {
        NetworkConfig::uniform(
            self.statics.len(),
            self.statics.iter().sum(),
            self.d,
            self.p,
        )
    }

    fn objective(&self, alloc: &[f64]) -> f64 {
        allocation_objective(self.p, &self.statics, alloc)
    }
}

/// Draws instances with N_c <= 4, D <= 12, p in [0.01, 0.3], S_i <= 20,
/// keeping those inside the optimizer's validity region
/// (D below `N_c / -ln(1-p)`).
fn small_instances(count: usize, seed: u64) -> (Vec<SmallInstance>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let n = rng.random_range(1..=4);
        let inst = SmallInstance {
            p: rng.random_range(0.01..=0.3),
            statics: (0..n).map(|_| rng.random_range(0..=20)).collect(),
            d: rng.random_range(1..=12),
        };
        if (inst.d as f64) < stationary_capacity(n, inst.p) {
            out.push(inst);
        } else {
            rejected += 1;
        }
    }
    (out, rejected)
}

/// Maximum of the objective over the real simplex by nested grid search:
/// a coarse pass over the whole simplex, then successive zooms around the
/// best few points until the step is at most 1e-3.
fn grid_optimum(inst: &SmallInstance) -> f64 {
    let n = inst.statics.len();
    let d = inst.d as f64;
    if n == 1 {
        return inst.objective(&[d]);
    }
    let free = n - 1;

    // Enumerates points of the box `center +- radius` on a grid of `step`,
    // clipped to the simplex, and returns them scored.
    let scan = |center: &[f64], radius: f64, step: f64| -> Vec<(f64, Vec<f64>)> {
        let lo: Vec<f64> = center.iter().map(|c| (c - radius).max(0.0)).collect();
        let counts: Vec<usize> = center
            .iter()
            .zip(&lo)
            .map(|(c, l)| (((c + radius).min(d) - l) / step).floor() as usize + 1)
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; free];
        loop {
            let x: Vec<f64> = (0..free).map(|i| lo[i] + idx[i] as f64 * step).collect();
            let used: f64 = x.iter().sum();
            if used <= d + 1e-12 {
                let mut full = x.clone();
                full.push((d - used).max(0.0));
                out.push((inst.objective(&full), x));
            }
            let mut k = 0;
            loop {
                if k == free {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < counts[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    };

    let mut step = d / 40.0;
    let mut candidates = scan(&vec![d / 2.0; free], d / 2.0 + step, step);
    loop {
        candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
        candidates.truncate(3);
        if step <= 1e-3 {
            return candidates[0].0;
        }
        let radius = 2.0 * step;
        step = (step / 8.0).max(1e-3 * 0.999);
        let mut next = Vec::new();
        for (_, x) in &candidates {
            next.extend(scan(x, radius, step));
        }
        candidates = next;
    }
}

fn oracle_vs_brute_force() -> Outcome {
    let start = Instant::now();
    let (instances, rejected) = small_instances(200, 2024);
    let mut worst_real = 0.0f64;
    let mut worst_rounding = 0.0f64;
    let mut rounding_failures = 0;
    let mut real_failures = 0;
    let mut worst_case = String::new();
    // Reference only: how largest-remainder rounding of the same real
    // optimum would fare. Does not enter the verdict.
    let mut largest_remainder_failures = 0;
    for inst in &instances {
        let cfg = inst.config();
        let statics = Allocation::new(inst.statics.clone());
        let real = optimal_real_allocation(&cfg, &statics).expect("feasible instance");
        let real_gap = (inst.objective(real.values()) - grid_optimum(inst)).abs();
        worst_real = worst_real.max(real_gap);
        real_failures += usize::from(real_gap > 1e-3);

        let rounded = round_allocation(&real, inst.d).unwrap();
        let best = brute_force_allocation(&cfg, &statics).unwrap();
        let as_f64 = |a: &Allocation| a.counts().iter().map(|&c| c as f64).collect::<Vec<_>>();
        let best_obj = inst.objective(&as_f64(&best));
        let rounded_obj = inst.objective(&as_f64(&rounded));
        let loss = (best_obj - rounded_obj) / best_obj;
        if loss > 0.02 {
            rounding_failures += 1;
        }
        let shares: Vec<f64> = real.values().iter().map(|v| v / real.total()).collect();
        let alt = split_to_counts(&shares, inst.d).unwrap();
        if (best_obj - inst.objective(&as_f64(&alt))) / best_obj > 0.02 {
            largest_remainder_failures += 1;
        }
        if loss > worst_rounding {
            worst_rounding = loss;
            worst_case = format!(
                "p={:.3} S={:?} D={} real={:?} rounded={} best={}",
                inst.p,
                inst.statics,
                inst.d,
                real.values()
                    .iter()
                    .map(|v| (v * 100.0).round() / 100.0)
                    .collect::<Vec<_>>(),
                rounded,
                best
            );
        }
    }
    let elapsed = start.elapsed();
    let passed = real_failures == 0 && rounding_failures == 0 && elapsed < Duration::from_secs(30);
    Outcome::new(
        passed,
        format!(
            "{} instances ({rejected} over-capacity draws skipped); real optimum vs grid: max gap {worst_real:.2e}, {real_failures} > 1e-3; \
             floor-then-remainder rounding vs exhaustive: max loss {:.2}%, {rounding_failures} > 2% (worst: {worst_case}); \
             [reference: largest-remainder rounding {largest_remainder_failures} > 2%]; {elapsed:.2?}",
            instances.len(),
            100.0 * worst_rounding
        ),
    )
}

// ---------------------------------------------------------------------------
// Analytic vs Monte-Carlo

fn analytic_vs_monte_carlo() -> Outcome {
    let start = Instant::now();
    let cfg = NetworkConfig {
        n_channels: 10,
        n_static: 180,
        n_dynamic: 20,
        tx_prob: 1e-2,
        static_split: UNEVEN_SPLIT.to_vec(),
        horizon: 100_000,
        seed: 100,
    };
    let valid = validate_config(&cfg).unwrap();
    let statics = valid.static_alloc();
    let checks = [
        (
            PolicyKind::Random,
            random_policy_success(&cfg, statics).unwrap().value(),
        ),
        (
            PolicyKind::OracleOptimal,
            allocation_success(&cfg, statics, &optimal_allocation(&cfg, statics).unwrap())
                .unwrap()
                .value(),
        ),
        (
            PolicyKind::OracleGreedy,
            allocation_success(&cfg, statics, &greedy_allocation(&cfg, statics).unwrap())
                .unwrap()
                .value(),
        ),
    ];
    let mut passed = true;
    let mut details = Vec::new();
    for (policy, expected) in checks {
        let (mut successes, mut attempts) = (0u64, 0u64);
        for replica in 0..10 {
            let run_cfg = cfg.clone().with_seed(cfg.seed + replica);
            let m = run_simulation(&run_cfg, statics, policy, &SimOptions::default()).unwrap();
            successes += m.dynamic_successes;
            attempts += m.dynamic_attempts;
        }
        let rate = successes as f64 / attempts as f64;
        let se = (expected * (1.0 - expected) / attempts as f64).sqrt();
        let z = (rate - expected) / se;
        passed &= z.abs() <= 3.0;
        details.push(format!(
            "{policy} sim {rate:.4} vs {expected:.4} (z = {z:+.2})"
        ));
    }
    let elapsed = start.elapsed();
    passed &= elapsed < Duration::from_secs(60);
    Outcome::new(passed, format!("{}; {elapsed:.2?}", details.join(", ")))
}

// ---------------------------------------------------------------------------
// Full-scale sweep: 2000 devices on 10 unevenly loaded channels

const SWEEP_SEEDS: usize = 3;

fn full_scale_sweep() -> (SweepResult, Duration) {
    let scenario = Scenario {
        base: NetworkConfig {
            n_channels: 10,
            n_static: 2000,
            n_dynamic: 0,
            tx_prob: 1e-3,
            static_split: UNEVEN_SPLIT.to_vec(),
            horizon: 1_000_000,
            seed: 1,
        },
        smart_fractions: vec![0.01, 0.1, 0.3, 0.5, 1.0],
        policies: vec![
            PolicyKind::Random,
            PolicyKind::OracleOptimal,
            PolicyKind::ucb1(),
            PolicyKind::ThompsonSampling,
        ],
        n_seeds: SWEEP_SEEDS,
        output_path: std::env::temp_dir(),
        window: None,
    };
    let start = Instant::now();
    let result = run_sweep(&scenario).expect("full-scale sweep");
    (result, start.elapsed())
}

fn mean_rate(result: &SweepResult, policy: PolicyKind, fraction: f64) -> f64 {
    result
        .summary
        .iter()
        .find(|r| r.policy == policy && r.fraction == fraction)
        .map(|r| r.mean_rate)
        .expect("summary row")
}

fn rates_at_ten_percent(result: &SweepResult, elapsed: Duration) -> Outcome {
    let f = 0.1;
    let random = mean_rate(result, PolicyKind::Random, f);
    let ucb = mean_rate(result, PolicyKind::ucb1(), f);
    let ts = mean_rate(result, PolicyKind::ThompsonSampling, f);
    let opt = mean_rate(result, PolicyKind::OracleOptimal, f);
    let per_run = elapsed / result.runs.len() as u32;
    let passed = (random - 0.83).abs() <= 0.02
        && (ucb - 0.88).abs() <= 0.02
        && (ts - 0.89).abs() <= 0.02
        && random <= ucb
        && ucb <= opt
        && random <= ts
        && ts <= opt
        && per_run < Duration::from_secs(300);
    Outcome::new(
        passed,
        format!(
            "random {random:.4} (0.83), ucb1 {ucb:.4} (0.88), thompson {ts:.4} (0.89), optimal {opt:.4}; {per_run:.2?} per run"
        ),
    )
}

fn gains_over_random(result: &SweepResult) -> Outcome {
    let gain = |policy, f| {
        let baseline = mean_rate(result, PolicyKind::Random, f);
        100.0 * (mean_rate(result, policy, f) - baseline) / baseline
    };
    let opt = gain(PolicyKind::OracleOptimal, 0.01);
    let ucb = gain(PolicyKind::ucb1(), 0.01);
    let ts = gain(PolicyKind::ThompsonSampling, 0.01);
    let opt_full = gain(PolicyKind::OracleOptimal, 1.0);
    let (lo, hi) = if ucb <= opt { (ucb, opt) } else { (opt, ucb) };
    let passed = (opt - 16.0).abs() <= 3.0
        && (ucb - 12.0).abs() <= 3.0
        && (lo..=hi).contains(&ts)
        && opt_full <= 2.0;
    Outcome::new(
        passed,
        format!(
            "fraction 0.01: optimal {opt:+.2}% (16), ucb1 {ucb:+.2}% (12), thompson {ts:+.2}%; fraction 1.0: optimal {opt_full:+.2}% (<= 2)"
        ),
    )
}

fn ordering(result: &SweepResult) -> Outcome {
    let mut passed = true;
    let mut details = Vec::new();
    for f in [0.1, 0.3, 0.5] {
        let random = mean_rate(result, PolicyKind::Random, f);
        let ucb = mean_rate(result, PolicyKind::ucb1(), f);
        let ts = mean_rate(result, PolicyKind::ThompsonSampling, f);
        let opt = mean_rate(result, PolicyKind::OracleOptimal, f);
        let ok = opt >= ts && ts >= random && opt >= ucb && ucb >= random;
        passed &= ok;
        details.push(format!(
            "{f}: opt {opt:.4} ts {ts:.4} ucb1 {ucb:.4} random {random:.4}"
        ));
    }
    Outcome::new(passed, details.join("; "))
}

// ---------------------------------------------------------------------------
// Determinism

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
[network]
n_channels = 4
total_devices = 120
tx_prob = 0.01
static_split = [0.4, 0.3, 0.2, 0.1]
horizon = 20000
seed = 9

[experiment]
smart_fractions = [0.25, 1.0]
policies = ["random", "oracle_optimal", "oracle_greedy", "ucb1", "thompson"]
n_seeds = 2
window = 1000
"#;
    let mut a = Scenario::from_toml(text).unwrap();
    a.output_path = dir.path().join("a");
    let mut b = a.clone();
    b.output_path = dir.path().join("b");

    let run_a = run_scenario(&a).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let run_b = pool.install(|| run_scenario(&b)).unwrap();

    let read = |p: &std::path::Path| std::fs::read(p).unwrap();
    let same_ts = read(&run_a.timeseries) == read(&run_b.timeseries);
    let same_summary = read(&run_a.summary) == read(&run_b.summary);
    // Rendering is a pure function of the results.
    let rerender = render_timeseries(&run_a.result.runs).into_bytes() == read(&run_a.timeseries)
        && render_summary(&run_a.result.summary).into_bytes() == read(&run_a.summary);
    Outcome::new(
        same_ts && same_summary && rerender,
        format!(
            "timeseries identical: {same_ts}, summary identical: {same_summary}, {} bytes",
            read(&run_a.timeseries).len()
        ),
    )
}

// ---------------------------------------------------------------------------
// Single-agent bandit

fn best_arm_fraction<P: ChannelPolicy>(mut policy: P, seed: u64) -> f64 {
    let means = [0.9, 0.1];
    let steps = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..steps {
        let arm = policy.choose(&mut rng);
        policy.update(arm, rng.random::<f64>() < means[arm]);
        best += usize::from(arm == 0);
    }
    best as f64 / steps as f64
}

fn single_agent_sanity() -> Outcome {
    let seeds = 0..20u64;
    let ucb: Vec<f64> = seeds
        .clone()
        .map(|s| best_arm_fraction(Ucb1State::new(2, 0.5), s))
        .collect();
    let ts: Vec<f64> = seeds
        .map(|s| best_arm_fraction(TsState::new(2), 1000 + s))
        .collect();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let min = |v: &[f64]| v.iter().copied().fold(1.0, f64::min);
    let passed = mean(&ucb) >= 0.85 && mean(&ts) >= 0.85;
    Outcome::new(
        passed,
        format!(
            "ucb1 mean {:.4} (min {:.4}), thompson mean {:.4} (min {:.4})",
            mean(&ucb),
            min(&ucb),
            mean(&ts),
            min(&ts)
        ),
    )
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("lambert-w correctness", lambert_correctness()),
        ("oracle vs brute force", oracle_vs_brute_force()),
        ("analytic vs monte-carlo", analytic_vs_monte_carlo()),
    ];
    let (sweep, elapsed) = full_scale_sweep();
    results.push((
        "success rates at 10% smart devices",
        rates_at_ten_percent(&sweep, elapsed),
    ));
    results.push(("gains over random", gains_over_random(&sweep)));
    results.push(("policy ordering", ordering(&sweep)));
    results.push(("determinism", determinism()));
    results.push(("single-agent bandit", single_agent_sanity()));

    let mut failed = 0;
    for (name, outcome) in &results {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
