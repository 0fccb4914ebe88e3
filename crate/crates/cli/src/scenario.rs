//! Scenario files.
//!
//! A scenario is a TOML document with two tables:
//!
//! ```toml
//! [network]
//! n_channels = 10
//! total_devices = 2000          # static + dynamic
//! tx_prob = 0.001
//! static_split = [0.3, 0.2, 0.1, 0.1, 0.05, 0.05, 0.02, 0.08, 0.01, 0.09]
//! horizon = 1000000
//! seed = 1                      # root seed; run i uses seed + i
//!
//! [experiment]
//! smart_fractions = [0.1, 0.3, 0.5, 1.0]
//! policies = ["random", "oracle_optimal", "oracle_greedy", "ucb1", "thompson"]
//! n_seeds = 3
//! output = "results/uneven"       # relative to the current directory
//! window = 5000                 # optional, defaults to horizon / 200
//! ```
//!
//! `static_split` defaults to a uniform split. Policy names are those of
//! [`PolicyKind`]'s `Display`, plus `ucb1@<alpha>` for a non-default alpha.

use std::path::{Path, PathBuf};

use iotmab_core::{validate_config, NetworkConfig, PolicyKind, ValidConfig};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    network: NetworkSection,
    experiment: ExperimentSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkSection {
    n_channels: usize,
    total_devices: usize,
    tx_prob: f64,
    static_split: Option<Vec<f64>>,
    horizon: u64,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentSection {
    smart_fractions: Vec<f64>,
    policies: Vec<String>,
    #[serde(default = "one")]
    n_seeds: usize,
    #[serde(default = "default_output")]
    output: PathBuf,
    window: Option<u64>,
}

fn one() -> usize {
    1
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

/// A sweep of policies over smart-device fractions, replicated over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Network with every device static; [`Scenario::config_for`] moves a
    /// fraction of them to the dynamic side.
    pub base: NetworkConfig,
    pub smart_fractions: Vec<f64>,
    pub policies: Vec<PolicyKind>,
    pub n_seeds: usize,
    pub output_path: PathBuf,
    pub window: Option<u64>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ScenarioFile = toml::from_str(text)?;
        let net = file.network;
        let exp = file.experiment;
        let n = net.n_channels;
        let base = NetworkConfig {
            n_channels: n,
            n_static: net.total_devices,
            n_dynamic: 0,
            tx_prob: net.tx_prob,
            static_split: net
                .static_split
                .unwrap_or_else(|| vec![1.0 / n.max(1) as f64; n]),
            horizon: net.horizon,
            seed: net.seed,
        };
        let policies = exp
            .policies
            .iter()
            .map(|name| name.parse::<PolicyKind>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let scenario = Scenario {
            base,
            smart_fractions: exp.smart_fractions,
            policies,
            n_seeds: exp.n_seeds,
            output_path: exp.output,
            window: exp.window,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        validate_config(&self.base)?;
        if self.smart_fractions.is_empty() {
            return Err(CliError::Invalid("no smart fraction given".into()));
        }
        if self.policies.is_empty() {
            return Err(CliError::Invalid("no policy given".into()));
        }
        if self.n_seeds == 0 {
            return Err(CliError::Invalid("n_seeds must be positive".into()));
        }
        if self.window == Some(0) {
            return Err(CliError::Invalid("window must be positive".into()));
        }
        for &f in &self.smart_fractions {
            if !(f > 0.0 && f <= 1.0) {
                return Err(CliError::Invalid(format!(
                    "smart fraction {f} is outside (0, 1]"
                )));
            }
            if self.dynamic_count(f) == 0 {
                return Err(CliError::Invalid(format!(
                    "smart fraction {f} leaves no dynamic device among {}",
                    self.total_devices()
                )));
            }
        }
        for (i, p) in self.policies.iter().enumerate() {
            if self.policies[..i].contains(p) {
                return Err(CliError::Invalid(format!("policy {p} listed twice")));
            }
        }
        Ok(())
    }

    pub fn total_devices(&self) -> usize {
        self.base.total_devices()
    }

    pub fn dynamic_count(&self, fraction: f64) -> usize {
        (fraction * self.total_devices() as f64).round() as usize
    }

    pub fn seed(&self, replica: usize) -> u64 {
        self.base.seed.wrapping_add(replica as u64)
    }

    /// Validated network for one smart fraction and seed replica.
    pub fn config_for(&self, fraction: f64, replica: usize) -> Result<ValidConfig> {
        let d = self.dynamic_count(fraction);
        let cfg = NetworkConfig {
            n_static: self.total_devices() - d,
            n_dynamic: d,
            seed: self.seed(replica),
            ..self.base.clone()
        };
        Ok(validate_config(&cfg)?)
    }
}
