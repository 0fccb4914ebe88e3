//! Slotted-ALOHA IoT network model with decentralized multi-armed bandit
//! channel selection.
//!
//! The crate is organised around the pieces of the experiment:
//!
//! * [`config`]: scenario description, validation and static-device placement.
//! * [`analytic`]: closed-form success probabilities for fixed policies.
//! * [`oracle`]: centralized allocations (Lagrange/Lambert-W optimum, greedy
//!   insertion, exhaustive search for small instances).
//! * [`bandit`]: per-device UCB1 and Thompson Sampling learners.
//! * [`sim`]: the slot-by-slot engine producing success-rate time series.
//! * [`rng`]: per-entity deterministic random streams.

pub mod analytic;
pub mod bandit;
pub mod config;
pub mod error;
pub mod oracle;
pub mod rng;
pub mod sim;

pub use analytic::{allocation_success, random_policy_success, SuccessProbability};
pub use bandit::{beta_sample, TsState, Ucb1State};
pub use config::{
    split_to_counts, validate_config, Allocation, NetworkConfig, PolicyKind, ValidConfig,
};
pub use error::{Error, Result};
pub use oracle::{
    brute_force_allocation, greedy_allocation, lambert_w0, optimal_real_allocation,
    round_allocation, RealAllocation,
};
pub use rng::{SeededStreams, StreamSource};
pub use sim::{run_simulation, MetricsSeries, SimOptions, SlotOutcome};
