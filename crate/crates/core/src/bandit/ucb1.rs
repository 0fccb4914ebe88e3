use rand::Rng;
use serde::Serialize;

use super::ChannelPolicy;

/// UCB1 learner state: per-arm pull counts and reward sums on the device's
/// local clock.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ucb1State {
    alpha: f64,
    pulls: Vec<u64>,
    reward_sums: Vec<u64>,
    local_time: u64,
}

impl Ucb1State {
    pub fn new(n_arms: usize, alpha: f64) -> Self {
        assert!(n_arms > 0, "UCB1 needs at least one arm");
        assert!(alpha > 0.0, "UCB1 alpha must be positive");
        Self {
            alpha,
            pulls: vec![0; n_arms],
            reward_sums: vec![0; n_arms],
            local_time: 0,
        }
    }

    /// Rebuilds a state from raw counters, checking its invariants.
    pub fn from_counts(alpha: f64, pulls: Vec<u64>, reward_sums: Vec<u64>) -> Option<Self> {
        let valid = alpha > 0.0
            && !pulls.is_empty()
            && pulls.len() == reward_sums.len()
            && pulls.iter().zip(&reward_sums).all(|(n, r)| r <= n);
        valid.then(|| Self {
            alpha,
            local_time: pulls.iter().sum(),
            pulls,
            reward_sums,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn pulls(&self) -> &[u64] {
        &self.pulls
    }

    pub fn reward_sums(&self) -> &[u64] {
        &self.reward_sums
    }

    pub fn local_time(&self) -> u64 {
        self.local_time
    }

    pub fn mean(&self, arm: usize) -> Option<f64> {
        (self.pulls[arm] > 0).then(|| self.reward_sums[arm] as f64 / self.pulls[arm] as f64)
    }

    /// `mean_k + sqrt(alpha ln t / N_k)`, or `None` for an untried arm.
    pub fn index(&self, arm: usize) -> Option<f64> {
        let n = self.pulls[arm];
        (n > 0).then(|| {
            let mean = self.reward_sums[arm] as f64 / n as f64;
            mean + (self.alpha * (self.local_time as f64).ln() / n as f64).sqrt()
        })
    }
}

impl ChannelPolicy for Ucb1State {
    fn n_arms(&self) -> usize {
        self.pulls.len()
    }

    /// Untried arms are played first, in index order. Afterwards the arm
    /// with the largest index is played; exact ties are broken uniformly at
    /// random, which is the only time `rng` is consumed.
    fn choose<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        if let Some(arm) = self.pulls.iter().position(|&n| n == 0) {
            return arm;
        }
        let mut best = f64::NEG_INFINITY;
        let mut ties = 0usize;
        let mut pick = 0;
        for arm in 0..self.pulls.len() {
            let u = self.index(arm).expect("all arms pulled");
            if u > best {
                best = u;
                ties = 1;
                pick = arm;
            } else if u == best {
                // Reservoir sampling over the maximizers.
                ties += 1;
                if rng.random_range(0..ties) == 0 {
                    pick = arm;
                }
            }
        }
        pick
    }

    fn update(&mut self, arm: usize, reward: bool) {
        self.pulls[arm] += 1;
        self.reward_sums[arm] += u64::from(reward);
        self.local_time += 1;
    }
}
