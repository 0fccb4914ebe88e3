//! Deterministic per-entity random streams.
//!
//! A run owns one root seed. Every simulated entity (the static traffic
//! generator, each dynamic device, each static device on the per-device
//! path) reads from its own stream, addressed by a stable entity index, so
//! the outcome does not depend on the order in which entities are visited.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream of the aggregated static traffic generator.
pub const TRAFFIC_STREAM: u64 = 0;

const DYNAMIC_BASE: u64 = 1;
const STATIC_BASE: u64 = 1 << 40;

pub fn dynamic_device_stream(index: usize) -> u64 {
    DYNAMIC_BASE + index as u64
}

pub fn static_device_stream(index: usize) -> u64 {
    STATIC_BASE + index as u64
}

/// Source of independent random streams keyed by entity.
pub trait StreamSource {
    type Stream: RngCore;

    fn stream(&self, entity: u64) -> Self::Stream;
}

/// ChaCha8 keyed by the root seed; the entity index selects the ChaCha
/// stream (nonce), giving 2^64 independent counter-based sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeededStreams {
    seed: u64,
}

impl SeededStreams {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl StreamSource for SeededStreams {
    type Stream = ChaCha8Rng;

    fn stream(&self, entity: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(entity);
        rng
    }
}
