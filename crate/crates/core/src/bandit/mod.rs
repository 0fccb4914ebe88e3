//! Per-device bandit learners.
//!
//! Each dynamic device runs its own learner on its *local* clock: the
//! learner sees one (arm, reward) pair per transmission of that device and
//! nothing in between. Arms are channels, the reward is 1 when the base
//! station acknowledged the packet.

mod sampling;
mod thompson;
mod ucb1;

pub use sampling::{beta_sample, gamma_sample};
pub use thompson::TsState;
pub use ucb1::Ucb1State;

use rand::Rng;

/// Sequential arm-selection policy fed with Bernoulli rewards.
pub trait ChannelPolicy {
    fn n_arms(&self) -> usize;

    fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> usize;

    fn update(&mut self, arm: usize, reward: bool);
}
