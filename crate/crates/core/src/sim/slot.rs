use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::config::Allocation;

/// A device transmitting in a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sender {
    Static(usize),
    Dynamic(usize),
}

/// Result of one slot.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SlotOutcome {
    /// Static plus dynamic senders per channel.
    pub attempts_per_channel: Vec<usize>,
    /// Channels that carried exactly one packet.
    pub successes: usize,
    pub dynamic_attempts: usize,
    pub dynamic_successes: usize,
}

impl SlotOutcome {
    pub fn total_attempts(&self) -> usize {
        self.attempts_per_channel.iter().sum()
    }

    /// Whether the single packet on `channel` got through.
    pub fn acked(&self, channel: usize) -> bool {
        self.attempts_per_channel[channel] == 1
    }

    pub(crate) fn reset(&mut self, n_channels: usize) {
        self.attempts_per_channel.clear();
        self.attempts_per_channel.resize(n_channels, 0);
        self.successes = 0;
        self.dynamic_attempts = 0;
        self.dynamic_successes = 0;
    }

    /// Fills in the success counts once `attempts_per_channel` is complete.
    /// `dynamic_channels` lists the channel of every dynamic sender.
    pub(crate) fn settle(&mut self, dynamic_channels: impl IntoIterator<Item = usize>) {
        self.successes = self
            .attempts_per_channel
            .iter()
            .filter(|&&n| n == 1)
            .count();
        for channel in dynamic_channels {
            self.dynamic_attempts += 1;
            if self.attempts_per_channel[channel] == 1 {
                self.dynamic_successes += 1;
            }
        }
    }
}

/// Collision model of the uplink: a channel succeeds iff exactly one device
/// sent on it; every packet on a channel with two or more senders is lost
/// and nobody gets an Ack. Returns the outcome and the acknowledged senders.
pub fn resolve_slot(transmitters: &[Vec<Sender>]) -> (SlotOutcome, Vec<Sender>) {
    let mut outcome = SlotOutcome::default();
    outcome.reset(transmitters.len());
    for (channel, senders) in transmitters.iter().enumerate() {
        outcome.attempts_per_channel[channel] = senders.len();
    }
    let dynamic = transmitters
        .iter()
        .enumerate()
        .flat_map(|(channel, senders)| {
            senders
                .iter()
                .filter(|s| matches!(s, Sender::Dynamic(_)))
                .map(move |_| channel)
        });
    let dynamic: Vec<usize> = dynamic.collect();
    outcome.settle(dynamic);
    let acked = transmitters
        .iter()
        .filter(|senders| senders.len() == 1)
        .map(|senders| senders[0])
        .collect();
    (outcome, acked)
}

/// Per-channel static traffic as one Binomial(S_i, p) draw per channel.
///
/// Static devices on a channel are interchangeable and only their number of
/// senders matters, so this has the same law as `S_i` Bernoulli draws.
#[derive(Debug, Clone)]
pub struct StaticTrafficSampler {
    channels: Vec<Option<Binomial>>,
}

impl StaticTrafficSampler {
    pub fn new(static_alloc: &Allocation, p: f64) -> Self {
        let channels = static_alloc
            .counts()
            .iter()
            .map(|&s| (s > 0).then(|| Binomial::new(s as u64, p).expect("p in (0, 1)")))
            .collect();
        Self { channels }
    }

    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [usize]) {
        for (slot, dist) in out.iter_mut().zip(&self.channels) {
            *slot = dist.as_ref().map_or(0, |d| d.sample(rng) as usize);
        }
    }
}

pub fn fast_static_traffic<R: Rng + ?Sized>(
    static_alloc: &Allocation,
    p: f64,
    rng: &mut R,
) -> Vec<usize> {
    let mut out = vec![0; static_alloc.n_channels()];
    StaticTrafficSampler::new(static_alloc, p).sample_into(rng, &mut out);
    out
}
