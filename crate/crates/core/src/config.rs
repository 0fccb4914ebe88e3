//! Scenario description and validation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the sum of the static split fractions.
pub const SPLIT_TOLERANCE: f64 = 1e-9;

/// Default UCB1 exploration parameter.
pub const DEFAULT_UCB_ALPHA: f64 = 0.5;

/// Full description of one network scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkConfig {
    pub n_channels: usize,
    pub n_static: usize,
    pub n_dynamic: usize,
    /// Per-device, per-slot transmission probability.
    pub tx_prob: f64,
    /// Share of the static devices placed on each channel.
    pub static_split: Vec<f64>,
    /// Number of simulated slots.
    pub horizon: u64,
    pub seed: u64,
}

impl NetworkConfig {
    /// Config with a uniform static split.
    pub fn uniform(n_channels: usize, n_static: usize, n_dynamic: usize, tx_prob: f64) -> Self {
        Self {
            n_channels,
            n_static,
            n_dynamic,
            tx_prob,
            static_split: vec![1.0 / n_channels.max(1) as f64; n_channels],
            horizon: 1,
            seed: 0,
        }
    }

    pub fn with_split(mut self, split: Vec<f64>) -> Self {
        self.static_split = split;
        self
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn total_devices(&self) -> usize {
        self.n_static + self.n_dynamic
    }
}

/// Integer per-channel device counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Allocation(Vec<usize>);

impl Allocation {
    pub fn new(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    pub fn zeros(n_channels: usize) -> Self {
        Self(vec![0; n_channels])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn n_channels(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Channel of the `index`-th device when devices are laid out channel by
    /// channel (first `counts[0]` devices on channel 0, and so on).
    pub fn channel_of(&self, mut index: usize) -> Option<usize> {
        for (channel, &count) in self.0.iter().enumerate() {
            if index < count {
                return Some(channel);
            }
            index -= count;
        }
        None
    }

    pub(crate) fn check(&self, n_channels: usize, total: usize) -> Result<()> {
        if self.n_channels() != n_channels {
            return Err(Error::ChannelMismatch {
                expected: n_channels,
                got: self.n_channels(),
            });
        }
        if self.total() != total {
            return Err(Error::AllocationTotal {
                expected: total,
                got: self.total(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Channel-selection policy followed by every dynamic device of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicyKind {
    Random,
    OracleOptimal,
    OracleGreedy,
    Ucb1 { alpha: f64 },
    ThompsonSampling,
}

impl PolicyKind {
    pub fn ucb1() -> Self {
        PolicyKind::Ucb1 {
            alpha: DEFAULT_UCB_ALPHA,
        }
    }

    pub fn is_learning(&self) -> bool {
        matches!(self, PolicyKind::Ucb1 { .. } | PolicyKind::ThompsonSampling)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PolicyKind::Ucb1 { alpha } if !(alpha > 0.0 && alpha.is_finite()) => Err(
                Error::InvalidConfig(format!("UCB1 alpha must be positive, got {alpha}")),
            ),
            _ => Ok(()),
        }
    }
}

/// Names are the ones used in scenario files and CSV outputs.
///
/// UCB1 with the default alpha is written `ucb1`, any other alpha as
/// `ucb1@<alpha>`.
impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyKind::Random => f.write_str("random"),
            PolicyKind::OracleOptimal => f.write_str("oracle_optimal"),
            PolicyKind::OracleGreedy => f.write_str("oracle_greedy"),
            PolicyKind::Ucb1 { alpha } if *alpha == DEFAULT_UCB_ALPHA => f.write_str("ucb1"),
            PolicyKind::Ucb1 { alpha } => write!(f, "ucb1@{alpha}"),
            PolicyKind::ThompsonSampling => f.write_str("thompson"),
        }
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let policy = match lower.as_str() {
            "random" => PolicyKind::Random,
            "oracle_optimal" | "optimal" => PolicyKind::OracleOptimal,
            "oracle_greedy" | "greedy" => PolicyKind::OracleGreedy,
            "ucb1" | "ucb" => PolicyKind::ucb1(),
            "thompson" | "ts" | "thompson_sampling" => PolicyKind::ThompsonSampling,
            other => match other.strip_prefix("ucb1@") {
                Some(alpha) => PolicyKind::Ucb1 {
                    alpha: alpha
                        .parse()
                        .map_err(|_| Error::InvalidConfig(format!("bad UCB1 alpha in {s:?}")))?,
                },
                None => return Err(Error::InvalidConfig(format!("unknown policy {s:?}"))),
            },
        };
        policy.validate()?;
        Ok(policy)
    }
}

/// A config that passed validation, together with its integer static
/// placement.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidConfig {
    config: NetworkConfig,
    static_alloc: Allocation,
}

impl ValidConfig {
    pub fn config(&self) -> &NetworkConfig {
        &self.config
    }

    pub fn static_alloc(&self) -> &Allocation {
        &self.static_alloc
    }

    pub fn into_parts(self) -> (NetworkConfig, Allocation) {
        (self.config, self.static_alloc)
    }
}

impl std::ops::Deref for ValidConfig {
    type Target = NetworkConfig;

    fn deref(&self) -> &NetworkConfig {
        &self.config
    }
}

fn check_split(split: &[f64]) -> Result<()> {
    if split.is_empty() {
        return Err(Error::InvalidConfig("static split is empty".into()));
    }
    if let Some(bad) = split.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidConfig(format!(
            "static split entries must be non-negative, got {bad}"
        )));
    }
    let sum: f64 = split.iter().sum();
    if (sum - 1.0).abs() > SPLIT_TOLERANCE {
        return Err(Error::InvalidConfig(format!(
            "static split sums to {sum}, expected 1"
        )));
    }
    Ok(())
}

/// Checks a config and converts its static split into integer counts.
pub fn validate_config(cfg: &NetworkConfig) -> Result<ValidConfig> {
    if cfg.n_channels == 0 {
        return Err(Error::InvalidConfig(
            "at least one channel is required".into(),
        ));
    }
    if !(cfg.tx_prob > 0.0 && cfg.tx_prob < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "transmission probability must lie in (0, 1), got {}",
            cfg.tx_prob
        )));
    }
    if cfg.horizon == 0 {
        return Err(Error::InvalidConfig("horizon must be positive".into()));
    }
    if cfg.static_split.len() != cfg.n_channels {
        return Err(Error::InvalidConfig(format!(
            "static split has {} entries for {} channels",
            cfg.static_split.len(),
            cfg.n_channels
        )));
    }
    let static_alloc = split_to_counts(&cfg.static_split, cfg.n_static)?;
    Ok(ValidConfig {
        config: cfg.clone(),
        static_alloc,
    })
}

/// Largest-remainder apportionment of `total` devices along `split`.
///
/// Every channel first gets the floor of its quota; the devices left over go
/// one each to the channels with the largest fractional remainders, lowest
/// index first on ties.
pub fn split_to_counts(split: &[f64], total: usize) -> Result<Allocation> {
    check_split(split)?;
    let sum: f64 = split.iter().sum();
    let mut counts = Vec::with_capacity(split.len());
    let mut remainders = Vec::with_capacity(split.len());
    for (i, share) in split.iter().enumerate() {
        let quota = share / sum * total as f64;
        // Absorb representation error such as 0.29 * 100 = 28.999999999999996.
        let floor = (quota + 1e-9).floor();
        counts.push(floor as usize);
        remainders.push((i, (quota - floor).max(0.0)));
    }
    let assigned: usize = counts.iter().sum();
    let mut left = total.saturating_sub(assigned);
    remainders.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    for &(i, _) in remainders.iter().cycle() {
        if left == 0 {
            break;
        }
        counts[i] += 1;
        left -= 1;
    }
    // Floors never overshoot except through the 1e-9 nudge on large totals.
    let mut excess = counts.iter().sum::<usize>().saturating_sub(total);
    for &(i, _) in remainders.iter().rev() {
        if excess == 0 {
            break;
        }
        if counts[i] > 0 {
            counts[i] -= 1;
            excess -= 1;
        }
    }
    Ok(Allocation(counts))
}

/// Uneven ten-channel static split used by the full-scale experiments.
pub const UNEVEN_SPLIT: [f64; 10] = [0.3, 0.2, 0.1, 0.1, 0.05, 0.05, 0.02, 0.08, 0.01, 0.09];
