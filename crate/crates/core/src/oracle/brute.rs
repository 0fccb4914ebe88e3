use crate::analytic::allocation_objective;
use crate::config::{Allocation, NetworkConfig};
use crate::error::{Error, Result};

pub const MAX_ENUM_DEVICES: usize = 15;
pub const MAX_ENUM_CHANNELS: usize = 5;

/// Exhaustive search over every integer allocation of the dynamic devices.
///
/// Compositions are visited in lexicographic order and only a strictly
/// better objective replaces the incumbent, so ties resolve to the
/// lexicographically smallest allocation.
pub fn brute_force_allocation(
    cfg: &NetworkConfig,
    static_alloc: &Allocation,
) -> Result<Allocation> {
    static_alloc.check(cfg.n_channels, static_alloc.total())?;
    if cfg.n_dynamic > MAX_ENUM_DEVICES || cfg.n_channels > MAX_ENUM_CHANNELS {
        return Err(Error::TooLarge {
            channels: cfg.n_channels,
            devices: cfg.n_dynamic,
        });
    }
    let mut search = Search {
        p: cfg.tx_prob,
        statics: static_alloc.counts(),
        current: vec![0.0; cfg.n_channels],
        best: None,
    };
    search.visit(0, cfg.n_dynamic);
    let (best, _) = search.best.expect("at least one composition");
    Ok(Allocation::new(best))
}

struct Search<'a> {
    p: f64,
    statics: &'a [usize],
    current: Vec<f64>,
    best: Option<(Vec<usize>, f64)>,
}

impl Search<'_> {
    fn visit(&mut self, channel: usize, left: usize) {
        let last = self.current.len() - 1;
        if channel == last {
            self.current[last] = left as f64;
            let value = allocation_objective(self.p, self.statics, &self.current);
            let better = match &self.best {
                None => true,
                Some((_, best)) => value > best + 1e-12 * best.abs().max(1.0),
            };
            if better {
                let counts = self.current.iter().map(|&v| v as usize).collect();
                self.best = Some((counts, value));
            }
            return;
        }
        for here in 0..=left {
            self.current[channel] = here as f64;
            self.visit(channel + 1, left - here);
        }
    }
}
