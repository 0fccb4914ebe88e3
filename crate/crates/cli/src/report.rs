//! Analytic report of the oracle allocations for each smart fraction.

use std::fmt::Write as _;

use iotmab_core::analytic::{allocation_success, random_policy_success};
use iotmab_core::oracle::{greedy_allocation, optimal_real_allocation, round_allocation};
use iotmab_core::Error as CoreError;

use crate::error::Result;
use crate::scenario::Scenario;

pub fn oracle_report(scenario: &Scenario) -> Result<String> {
    let mut out = String::new();
    for &fraction in &scenario.smart_fractions {
        let valid = scenario.config_for(fraction, 0)?;
        let cfg = valid.config();
        let statics = valid.static_alloc();
        let random = random_policy_success(cfg, statics)?.value();
        let greedy = greedy_allocation(cfg, statics)?;
        let greedy_rate = allocation_success(cfg, statics, &greedy)?.value();

        writeln!(
            out,
            "fraction {fraction}: S = {}, D = {}",
            cfg.n_static, cfg.n_dynamic
        )
        .ok();
        writeln!(out, "  static allocation   {statics}").ok();
        writeln!(out, "  random policy       rate {random:.6}").ok();
        match optimal_real_allocation(cfg, statics) {
            Ok(real) => {
                let rounded = round_allocation(&real, cfg.n_dynamic)?;
                let rate = allocation_success(cfg, statics, &rounded)?.value();
                let values: Vec<String> = real.values().iter().map(|v| format!("{v:.3}")).collect();
                writeln!(
                    out,
                    "  optimal (real)      ({}) lambda {:.6e}",
                    values.join(", "),
                    real.lambda()
                )
                .ok();
                writeln!(
                    out,
                    "  optimal (rounded)   {rounded} rate {rate:.6} gain {:+.2}%",
                    100.0 * (rate - random) / random
                )
                .ok();
            }
            Err(err @ CoreError::OverCapacity { .. }) => {
                writeln!(out, "  optimal             unavailable: {err}").ok();
            }
            Err(err) => return Err(err.into()),
        }
        writeln!(
            out,
            "  greedy              {greedy} rate {greedy_rate:.6} gain {:+.2}%",
            100.0 * (greedy_rate - random) / random
        )
        .ok();
    }
    Ok(out)
}
