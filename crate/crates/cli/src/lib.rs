//! Experiment runner: scenario files, policy sweeps and CSV outputs.

pub mod error;
pub mod gains;
pub mod report;
pub mod runner;
pub mod scenario;

pub use error::{CliError, Result};
pub use gains::{render_gains, summarize_gains, GainRow};
pub use report::oracle_report;
pub use runner::{run_scenario, run_sweep, RunRecord, ScenarioOutputs, SummaryRow, SweepResult};
pub use scenario::Scenario;
