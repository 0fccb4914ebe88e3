//! Sweep execution and CSV output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use iotmab_core::{run_simulation, MetricsSeries, PolicyKind, SimOptions};
use log::{debug, info};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::scenario::Scenario;

pub const TIMESERIES_HEADER: &str = "policy,fraction,seed,slot,cum_rate,win_rate";
pub const SUMMARY_HEADER: &str = "policy,fraction,mean_rate,std_rate,gain_vs_random";
pub const TIMESERIES_FILE: &str = "timeseries.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

/// One simulated (policy, fraction, seed) triple.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub policy: PolicyKind,
    pub fraction: f64,
    pub seed: u64,
    pub series: MetricsSeries,
}

/// End-of-run statistics of one (policy, fraction) pair across seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub policy: PolicyKind,
    pub fraction: f64,
    pub mean_rate: f64,
    /// Sample standard deviation; zero for a single seed.
    pub std_rate: f64,
    /// `(mean - mean_random) / mean_random`, when the sweep includes the
    /// random policy.
    pub gain_vs_random: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub runs: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Runs every (policy, fraction, seed) triple of the scenario.
///
/// Runs are independent and execute on the current rayon pool; results keep
/// the scenario order (policies, then fractions, then seeds) whatever the
/// thread count.
pub fn run_sweep(scenario: &Scenario) -> Result<SweepResult> {
    scenario.validate()?;
    let jobs: Vec<(PolicyKind, f64, usize)> = scenario
        .policies
        .iter()
        .flat_map(|&policy| {
            scenario.smart_fractions.iter().flat_map(move |&fraction| {
                (0..scenario.n_seeds).map(move |replica| (policy, fraction, replica))
            })
        })
        .collect();
    info!("running {} simulations", jobs.len());
    let opts = SimOptions {
        window: scenario.window,
        ..SimOptions::default()
    };

    let runs = jobs
        .par_iter()
        .map(|&(policy, fraction, replica)| {
            let valid = scenario.config_for(fraction, replica)?;
            let series = run_simulation(valid.config(), valid.static_alloc(), policy, &opts)?;
            debug!(
                "{policy} fraction={fraction} seed={} rate={:.4}",
                valid.seed,
                series.final_rate()
            );
            Ok(RunRecord {
                policy,
                fraction,
                seed: valid.seed,
                series,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summary = summarize(scenario, &runs);
    Ok(SweepResult { runs, summary })
}

fn summarize(scenario: &Scenario, runs: &[RunRecord]) -> Vec<SummaryRow> {
    let stats = |policy: PolicyKind, fraction: f64| {
        let rates: Vec<f64> = runs
            .iter()
            .filter(|r| r.policy == policy && r.fraction == fraction)
            .map(|r| r.series.final_rate())
            .collect();
        mean_std(&rates)
    };
    let has_random = scenario.policies.contains(&PolicyKind::Random);
    let mut rows = Vec::new();
    for &policy in &scenario.policies {
        for &fraction in &scenario.smart_fractions {
            let (mean_rate, std_rate) = stats(policy, fraction);
            let gain_vs_random = has_random.then(|| {
                let (baseline, _) = stats(PolicyKind::Random, fraction);
                relative_gain(mean_rate, baseline)
            });
            rows.push(SummaryRow {
                policy,
                fraction,
                mean_rate,
                std_rate,
                gain_vs_random,
            });
        }
    }
    rows
}

pub fn relative_gain(rate: f64, baseline: f64) -> f64 {
    (rate - baseline) / baseline
}

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

pub fn render_timeseries(runs: &[RunRecord]) -> String {
    let mut out = String::new();
    out.push_str(TIMESERIES_HEADER);
    out.push('\n');
    for run in runs {
        for point in &run.series.points {
            writeln!(
                out,
                "{},{:.6},{},{},{:.6},{:.6}",
                run.policy, run.fraction, run.seed, point.slot, point.cum_rate, point.win_rate
            )
            .expect("writing to a String");
        }
    }
    out
}

pub fn render_summary(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for row in rows {
        let gain = row
            .gain_vs_random
            .map(|g| format!("{g:.6}"))
            .unwrap_or_default();
        writeln!(
            out,
            "{},{:.6},{:.6},{:.6},{}",
            row.policy, row.fraction, row.mean_rate, row.std_rate, gain
        )
        .expect("writing to a String");
    }
    out
}

/// Paths of the files written by [`run_scenario`].
#[derive(Debug, Clone)]
pub struct ScenarioOutputs {
    pub timeseries: PathBuf,
    pub summary: PathBuf,
    pub result: SweepResult,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Runs the sweep and writes `timeseries.csv` and `summary.csv` into
/// `scenario.output_path`.
pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioOutputs> {
    let dir = &scenario.output_path;
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let result = run_sweep(scenario)?;
    let timeseries = dir.join(TIMESERIES_FILE);
    let summary = dir.join(SUMMARY_FILE);
    write_file(&timeseries, &render_timeseries(&result.runs))?;
    write_file(&summary, &render_summary(&result.summary))?;
    Ok(ScenarioOutputs {
        timeseries,
        summary,
        result,
    })
}
