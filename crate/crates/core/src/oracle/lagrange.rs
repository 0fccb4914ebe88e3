use std::f64::consts::E;

use serde::Serialize;

use super::lambert::lambert_w0;
use crate::analytic::silence_prob;
use crate::config::{Allocation, NetworkConfig};
use crate::error::{Error, Result};

const MAX_HALVINGS: usize = 2000;
const MAX_BISECTIONS: usize = 200;
const SUM_TOLERANCE: f64 = 1e-9;

/// Real-valued optimum of the stationary allocation problem and its
/// Lagrange multiplier.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealAllocation {
    values: Vec<f64>,
    lambda: f64,
}

impl RealAllocation {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Largest number of dynamic devices for which the stationarity conditions
/// admit a non-negative multiplier: `N_c / -ln(1 - p)`.
pub fn stationary_capacity(n_channels: usize, p: f64) -> f64 {
    n_channels as f64 / -(-p).ln_1p()
}

/// Number of dynamic devices a channel with `static_count` static devices
/// receives at multiplier `lambda`:
/// `max(0, (W(lambda e / (1-p)^(S-1)) - 1) / ln(1-p))`.
pub fn dynamic_share(p: f64, static_count: usize, lambda: f64) -> Result<f64> {
    let arg = lambda * E / silence_prob(p, static_count as f64 - 1.0);
    let w = lambert_w0(arg)?;
    Ok(((w - 1.0) / (-p).ln_1p()).max(0.0))
}

fn shares(p: f64, statics: &[usize], lambda: f64) -> Result<Vec<f64>> {
    statics
        .iter()
        .map(|&s| dynamic_share(p, s, lambda))
        .collect()
}

fn total_share(p: f64, statics: &[usize], lambda: f64) -> Result<f64> {
    statics.iter().map(|&s| dynamic_share(p, s, lambda)).sum()
}

/// Solves the continuous allocation problem
/// `max sum_i D_i (1-p)^(S_i + D_i - 1)` s.t. `sum_i D_i = D`, `D_i >= 0`.
///
/// The multiplier is found by bisection on the non-increasing map
/// `lambda -> sum_i D_i*(lambda)`. The upper end of the bracket is
/// `max_i (1-p)^(S_i-1)`, where every share is zero; the lower end is halved
/// until the shares cover `D`.
pub fn optimal_real_allocation(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
) -> Result<RealAllocation> {
    static_alloc.check(cfg.n_channels, static_alloc.total())?;
    let target = cfg.n_dynamic as f64;
    if cfg.n_dynamic == 0 {
        return Err(Error::NoDynamicDevice);
    }
    let p = cfg.tx_prob;
    let capacity = stationary_capacity(cfg.n_channels, p);
    if target >= capacity {
        return Err(Error::OverCapacity {
            devices: cfg.n_dynamic,
            capacity,
        });
    }
    let statics = static_alloc.counts();

    let mut hi = statics
        .iter()
        .map(|&s| silence_prob(p, s as f64 - 1.0))
        .fold(0.0, f64::max);
    let mut lo = hi;
    let mut found = false;
    for _ in 0..MAX_HALVINGS {
        lo *= 0.5;
        if total_share(p, statics, lo)? >= target {
            found = true;
            break;
        }
        hi = lo;
    }
    if !found {
        return Err(Error::MultiplierConvergence {
            sum: total_share(p, statics, lo)?,
            target,
        });
    }

    let mut lambda = lo;
    let mut sum = total_share(p, statics, lambda)?;
    for _ in 0..MAX_BISECTIONS {
        if (sum - target).abs() <= SUM_TOLERANCE * target {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let mid_sum = total_share(p, statics, mid)?;
        if mid_sum >= target {
            lo = mid;
        } else {
            hi = mid;
        }
        lambda = mid;
        sum = mid_sum;
    }
    if (sum - target).abs() > SUM_TOLERANCE * target {
        return Err(Error::MultiplierConvergence { sum, target });
    }

    Ok(RealAllocation {
        values: shares(p, statics, lambda)?,
        lambda,
    })
}

/// Shares within this distance below an integer floor to that integer; the
/// multiplier search only pins the total down to `1e-9 D`.
const FLOOR_SLACK: f64 = 1e-6;

/// Rounds a real allocation to integers: floor on every channel but the
/// last, which receives the remainder.
pub fn round_allocation(real: &RealAllocation, n_dynamic: usize) -> Result<Allocation> {
    let n = real.values.len();
    let mut counts: Vec<usize> = real.values[..n.saturating_sub(1)]
        .iter()
        .map(|v| (v + FLOOR_SLACK).floor() as usize)
        .collect();
    let assigned: usize = counts.iter().sum();
    assert!(
        assigned <= n_dynamic,
        "floors {assigned} exceed the {n_dynamic} devices to place"
    );
    counts.push(n_dynamic - assigned);
    Ok(Allocation::new(counts))
}
