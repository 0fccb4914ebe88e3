//! Centralized allocations of dynamic devices to channels.
//!
//! These policies assume an oracle that knows the static load of every
//! channel and places the dynamic devices once and for all. They bound the
//! learning policies from above.

mod brute;
mod greedy;
mod lagrange;
mod lambert;

pub use brute::{brute_force_allocation, MAX_ENUM_CHANNELS, MAX_ENUM_DEVICES};
pub use greedy::greedy_allocation;
pub use lagrange::{
    dynamic_share, optimal_real_allocation, round_allocation, stationary_capacity, RealAllocation,
};
pub use lambert::lambert_w0;

use crate::config::{Allocation, NetworkConfig};
use crate::error::Result;

/// Optimal real allocation rounded with the floor-then-remainder rule.
pub fn optimal_allocation(cfg: &NetworkConfig, static_alloc: &Allocation) -> Result<Allocation> {
    let real = optimal_real_allocation(cfg, static_alloc)?;
    round_allocation(&real, cfg.n_dynamic)
}
