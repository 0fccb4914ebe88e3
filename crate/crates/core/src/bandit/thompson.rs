use rand::Rng;
use serde::Serialize;

use super::{beta_sample, ChannelPolicy};

/// Beta posterior parameters per arm, starting from the uniform prior
/// Beta(1, 1).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TsState {
    a: Vec<u64>,
    b: Vec<u64>,
}

impl TsState {
    pub fn new(n_arms: usize) -> Self {
        assert!(n_arms > 0, "Thompson Sampling needs at least one arm");
        Self {
            a: vec![1; n_arms],
            b: vec![1; n_arms],
        }
    }

    pub fn from_params(a: Vec<u64>, b: Vec<u64>) -> Option<Self> {
        let valid = !a.is_empty() && a.len() == b.len() && a.iter().chain(&b).all(|&v| v >= 1);
        valid.then_some(Self { a, b })
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn pulls(&self, arm: usize) -> u64 {
        self.a[arm] + self.b[arm] - 2
    }
}

impl ChannelPolicy for TsState {
    fn n_arms(&self) -> usize {
        self.a.len()
    }

    /// One posterior draw per arm; the largest wins, lowest index on ties.
    fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut best = f64::NEG_INFINITY;
        let mut pick = 0;
        for (arm, (&a, &b)) in self.a.iter().zip(&self.b).enumerate() {
            let x = beta_sample(a, b, rng);
            if x > best {
                best = x;
                pick = arm;
            }
        }
        pick
    }

    fn update(&mut self, arm: usize, reward: bool) {
        if reward {
            self.a[arm] += 1;
        } else {
            self.b[arm] += 1;
        }
    }
}
