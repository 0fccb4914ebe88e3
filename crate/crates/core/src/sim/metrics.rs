use serde::Serialize;

/// One aggregation point of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsPoint {
    /// Number of slots elapsed at the end of the window.
    pub slot: u64,
    /// Dynamic successes over dynamic attempts since the start of the run.
    pub cum_rate: f64,
    /// Same ratio restricted to the window. A window without any dynamic
    /// attempt repeats the cumulative rate.
    pub win_rate: f64,
}

/// Success-rate time series of the dynamic devices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsSeries {
    pub window_size: u64,
    pub points: Vec<MetricsPoint>,
    pub dynamic_attempts: u64,
    pub dynamic_successes: u64,
    pub total_attempts: u64,
    pub total_successes: u64,
    tx_prob: f64,
}

impl MetricsSeries {
    pub fn final_rate(&self) -> f64 {
        ratio(self.dynamic_successes, self.dynamic_attempts)
    }

    /// Average number of transmissions per device after `slot` slots.
    pub fn mean_transmissions(&self, slot: u64) -> f64 {
        slot as f64 * self.tx_prob
    }

    /// Binomial standard error of the final cumulative rate around `prob`.
    pub fn standard_error(&self, prob: f64) -> f64 {
        (prob * (1.0 - prob) / self.dynamic_attempts.max(1) as f64).sqrt()
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Accumulates slot results into a [`MetricsSeries`].
#[derive(Debug)]
pub(crate) struct MetricsRecorder {
    series: MetricsSeries,
    horizon: u64,
    win_attempts: u64,
    win_successes: u64,
}

impl MetricsRecorder {
    pub(crate) fn new(window_size: u64, horizon: u64, tx_prob: f64) -> Self {
        let window_size = window_size.clamp(1, horizon.max(1));
        Self {
            series: MetricsSeries {
                window_size,
                points: Vec::with_capacity(horizon.div_ceil(window_size) as usize),
                dynamic_attempts: 0,
                dynamic_successes: 0,
                total_attempts: 0,
                total_successes: 0,
                tx_prob,
            },
            horizon,
            win_attempts: 0,
            win_successes: 0,
        }
    }

    /// Records slot `slot` (0-based).
    pub(crate) fn record(
        &mut self,
        slot: u64,
        dynamic_attempts: usize,
        dynamic_successes: usize,
        total_attempts: usize,
        total_successes: usize,
    ) {
        let s = &mut self.series;
        s.dynamic_attempts += dynamic_attempts as u64;
        s.dynamic_successes += dynamic_successes as u64;
        s.total_attempts += total_attempts as u64;
        s.total_successes += total_successes as u64;
        self.win_attempts += dynamic_attempts as u64;
        self.win_successes += dynamic_successes as u64;

        let elapsed = slot + 1;
        if elapsed.is_multiple_of(s.window_size) || elapsed == self.horizon {
            let cum_rate = ratio(s.dynamic_successes, s.dynamic_attempts);
            let win_rate = if self.win_attempts == 0 {
                cum_rate
            } else {
                ratio(self.win_successes, self.win_attempts)
            };
            s.points.push(MetricsPoint {
                slot: elapsed,
                cum_rate,
                win_rate,
            });
            self.win_attempts = 0;
            self.win_successes = 0;
        }
    }

    pub(crate) fn finish(self) -> MetricsSeries {
        self.series
    }
}
