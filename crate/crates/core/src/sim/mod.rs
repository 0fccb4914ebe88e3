//! Slot-by-slot simulation of the uplink.

mod engine;
mod metrics;
mod slot;

pub use engine::{
    run_simulation, run_simulation_observed, run_simulation_with, SimOptions, StaticMode,
};
pub use metrics::{MetricsPoint, MetricsSeries};
pub use slot::{fast_static_traffic, resolve_slot, Sender, SlotOutcome, StaticTrafficSampler};
