//! Closed-form per-transmission success probabilities of dynamic devices.

use serde::Serialize;

use crate::config::{Allocation, NetworkConfig};
use crate::error::{Error, Result};

/// Probability that a transmission of a dynamic device is acknowledged.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct SuccessProbability(f64);

impl SuccessProbability {
    fn new(value: f64) -> Self {
        debug_assert!((-1e-12..=1.0 + 1e-12).contains(&value), "{value}");
        Self(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<SuccessProbability> for f64 {
    fn from(p: SuccessProbability) -> f64 {
        p.0
    }
}

/// Exponent above which `(1 - p)^k` switches from `powi` to `exp(k ln(1 - p))`.
const POWI_LIMIT: f64 = 1024.0;

/// `(1 - p)^k` for real `k >= -1`.
pub fn silence_prob(p: f64, k: f64) -> f64 {
    if k.fract() == 0.0 && k.abs() <= POWI_LIMIT {
        (1.0 - p).powi(k as i32)
    } else {
        (k * (-p).ln_1p()).exp()
    }
}

/// `sum_i D_i (1 - p)^(S_i + D_i - 1)` over channels with `D_i > 0`.
///
/// This is the expected number of acknowledged dynamic transmissions per
/// slot divided by `p`; dividing by `D` gives the success probability of a
/// fixed allocation. Real-valued so the continuous optimum can be scored.
pub fn allocation_objective(p: f64, static_counts: &[usize], dynamic: &[f64]) -> f64 {
    static_counts
        .iter()
        .zip(dynamic)
        .filter(|(_, &d)| d > 0.0)
        .map(|(&s, &d)| d * silence_prob(p, s as f64 + d - 1.0))
        .sum()
}

/// Success probability when every dynamic device picks a channel uniformly
/// at random for each transmission:
/// `(1/N) (1 - p/N)^(D-1) sum_i (1 - p)^S_i`.
pub fn random_policy_success(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
) -> Result<SuccessProbability> {
    static_alloc.check(cfg.n_channels, static_alloc.total())?;
    if cfg.n_dynamic == 0 {
        return Err(Error::NoDynamicDevice);
    }
    let n = cfg.n_channels as f64;
    let p = cfg.tx_prob;
    let others = ((cfg.n_dynamic - 1) as f64 * (-p / n).ln_1p()).exp();
    let statics: f64 = static_alloc
        .counts()
        .iter()
        .map(|&s| silence_prob(p, s as f64))
        .sum();
    Ok(SuccessProbability::new(others * statics / n))
}

/// Success probability of a fixed (stationary) dynamic allocation.
pub fn allocation_success(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
    dyn_alloc: &Allocation,
) -> Result<SuccessProbability> {
    static_alloc.check(cfg.n_channels, static_alloc.total())?;
    dyn_alloc.check(cfg.n_channels, dyn_alloc.total())?;
    let d = dyn_alloc.total();
    if d == 0 {
        return Err(Error::NoDynamicDevice);
    }
    let dynamic: Vec<f64> = dyn_alloc.counts().iter().map(|&c| c as f64).collect();
    let objective = allocation_objective(cfg.tx_prob, static_alloc.counts(), &dynamic);
    Ok(SuccessProbability::new(objective / d as f64))
}
