use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use super::metrics::{MetricsRecorder, MetricsSeries};
use super::slot::{SlotOutcome, StaticTrafficSampler};
use crate::bandit::{ChannelPolicy, TsState, Ucb1State};
use crate::config::{Allocation, NetworkConfig, PolicyKind};
use crate::error::{Error, Result};
use crate::oracle::{greedy_allocation, optimal_allocation};
use crate::rng::{
    dynamic_device_stream, static_device_stream, SeededStreams, StreamSource, TRAFFIC_STREAM,
};

/// How static traffic is generated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum StaticMode {
    /// One Binomial(S_i, p) draw per channel and slot.
    #[default]
    Binomial,
    /// One Bernoulli(p) draw per static device and slot, each device on its
    /// own stream. Same law, much slower; kept as a reference path.
    PerDevice,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimOptions {
    /// Slots per aggregation window; `horizon / 200` when unset.
    pub window: Option<u64>,
    pub static_mode: StaticMode,
}

impl SimOptions {
    pub fn window_for(&self, horizon: u64) -> u64 {
        self.window.unwrap_or(horizon / 200).max(1)
    }
}

/// Runs one scenario with the streams derived from `cfg.seed`.
pub fn run_simulation(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
    policy: PolicyKind,
    opts: &SimOptions,
) -> Result<MetricsSeries> {
    run_simulation_with(
        cfg,
        static_alloc,
        policy,
        opts,
        &SeededStreams::new(cfg.seed),
    )
}

/// Runs one scenario drawing every random number from `streams`.
pub fn run_simulation_with<S: StreamSource>(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
    policy: PolicyKind,
    opts: &SimOptions,
    streams: &S,
) -> Result<MetricsSeries> {
    run_simulation_observed(cfg, static_alloc, policy, opts, streams, |_, _| {})
}

enum Brain {
    Uniform,
    Fixed(usize),
    Ucb1(Ucb1State),
    Thompson(TsState),
}

impl Brain {
    fn choose<R: Rng + ?Sized>(&self, n_channels: usize, rng: &mut R) -> usize {
        match self {
            Brain::Uniform => rng.random_range(0..n_channels),
            Brain::Fixed(channel) => *channel,
            Brain::Ucb1(state) => state.choose(rng),
            Brain::Thompson(state) => state.choose(rng),
        }
    }

    fn learn(&mut self, channel: usize, acked: bool) {
        match self {
            Brain::Uniform | Brain::Fixed(_) => {}
            Brain::Ucb1(state) => state.update(channel, acked),
            Brain::Thompson(state) => state.update(channel, acked),
        }
    }
}

struct Device<R> {
    brain: Brain,
    rng: R,
}

/// Slots until the next transmission of a device transmitting with
/// probability `p` in every slot: `P(k) = (1-p)^k p`, drawn by inversion.
fn geometric_gap<R: Rng + ?Sized>(rng: &mut R, ln_silence: f64) -> u64 {
    let u = 1.0 - rng.random::<f64>();
    (u.ln() / ln_silence).floor() as u64
}

fn fixed_allocation(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
    policy: PolicyKind,
) -> Result<Option<Allocation>> {
    match policy {
        PolicyKind::OracleOptimal if cfg.n_dynamic > 0 => {
            optimal_allocation(cfg, static_alloc).map(Some)
        }
        PolicyKind::OracleGreedy => greedy_allocation(cfg, static_alloc).map(Some),
        PolicyKind::OracleOptimal => Ok(Some(Allocation::zeros(cfg.n_channels))),
        _ => Ok(None),
    }
}

/// Runs one scenario and hands every slot outcome to `observer`.
///
/// Per slot: static devices send according to `opts.static_mode`; each
/// dynamic device whose Bernoulli clock fires picks a channel from its
/// slot-start state; channels with exactly one sender succeed; transmitting
/// dynamic devices learn from the Ack (or its absence) after resolution.
///
/// A dynamic device's transmission slots are generated as geometric gaps
/// on its own stream, which gives the same law as one Bernoulli(p) draw
/// per slot and skips the idle slots.
pub fn run_simulation_observed<S, F>(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
    policy: PolicyKind,
    opts: &SimOptions,
    streams: &S,
    mut observer: F,
) -> Result<MetricsSeries>
where
    S: StreamSource,
    F: FnMut(u64, &SlotOutcome),
{
    policy.validate()?;
    static_alloc.check(cfg.n_channels, cfg.n_static)?;
    if cfg.n_channels == 0 || !(cfg.tx_prob > 0.0 && cfg.tx_prob < 1.0) {
        return Err(Error::InvalidConfig(
            "simulation needs a validated configuration".into(),
        ));
    }
    let n_channels = cfg.n_channels;
    let p = cfg.tx_prob;
    let horizon = cfg.horizon;
    let ln_silence = (-p).ln_1p();

    let fixed = fixed_allocation(cfg, static_alloc, policy)?;
    let mut devices: Vec<Device<S::Stream>> = (0..cfg.n_dynamic)
        .map(|i| {
            let brain = match policy {
                PolicyKind::Random => Brain::Uniform,
                PolicyKind::OracleOptimal | PolicyKind::OracleGreedy => Brain::Fixed(
                    fixed
                        .as_ref()
                        .and_then(|a| a.channel_of(i))
                        .expect("oracle allocation covers every device"),
                ),
                PolicyKind::Ucb1 { alpha } => Brain::Ucb1(Ucb1State::new(n_channels, alpha)),
                PolicyKind::ThompsonSampling => Brain::Thompson(TsState::new(n_channels)),
            };
            Device {
                brain,
                rng: streams.stream(dynamic_device_stream(i)),
            }
        })
        .collect();

    let mut queue = BinaryHeap::with_capacity(devices.len());
    for (i, device) in devices.iter_mut().enumerate() {
        let first = geometric_gap(&mut device.rng, ln_silence);
        if first < horizon {
            queue.push(Reverse((first, i)));
        }
    }

    let mut traffic_rng = streams.stream(TRAFFIC_STREAM);
    let sampler = StaticTrafficSampler::new(static_alloc, p);
    let mut static_devices: Vec<(usize, S::Stream)> = match opts.static_mode {
        StaticMode::Binomial => Vec::new(),
        StaticMode::PerDevice => (0..cfg.n_static)
            .map(|k| {
                let channel = static_alloc.channel_of(k).expect("static device placed");
                (channel, streams.stream(static_device_stream(k)))
            })
            .collect(),
    };

    let mut recorder = MetricsRecorder::new(opts.window_for(horizon), horizon, p);
    let mut outcome = SlotOutcome::default();
    let mut senders: Vec<(usize, usize)> = Vec::new();

    for slot in 0..horizon {
        outcome.reset(n_channels);
        match opts.static_mode {
            StaticMode::Binomial => {
                sampler.sample_into(&mut traffic_rng, &mut outcome.attempts_per_channel)
            }
            StaticMode::PerDevice => {
                for (channel, rng) in static_devices.iter_mut() {
                    if rng.random_bool(p) {
                        outcome.attempts_per_channel[*channel] += 1;
                    }
                }
            }
        }

        senders.clear();
        while let Some(&Reverse((when, i))) = queue.peek() {
            if when != slot {
                break;
            }
            queue.pop();
            let device = &mut devices[i];
            let channel = device.brain.choose(n_channels, &mut device.rng);
            senders.push((i, channel));
            let next = slot + 1 + geometric_gap(&mut device.rng, ln_silence);
            if next < horizon {
                queue.push(Reverse((next, i)));
            }
        }
        for &(_, channel) in &senders {
            outcome.attempts_per_channel[channel] += 1;
        }
        outcome.settle(senders.iter().map(|&(_, c)| c));

        for &(i, channel) in &senders {
            let acked = outcome.acked(channel);
            devices[i].brain.learn(channel, acked);
        }

        debug_assert_eq!(
            outcome.successes,
            outcome
                .attempts_per_channel
                .iter()
                .filter(|&&n| n == 1)
                .count()
        );
        debug_assert!(outcome.dynamic_successes <= outcome.dynamic_attempts);

        observer(slot, &outcome);
        recorder.record(
            slot,
            outcome.dynamic_attempts,
            outcome.dynamic_successes,
            outcome.total_attempts(),
            outcome.successes,
        );
    }

    Ok(recorder.finish())
}
