use crate::config::{Allocation, NetworkConfig};
use crate::error::Result;

/// Inserts the dynamic devices one at a time into the channel with the
/// smallest current load `S_i + D_i`, lowest index on ties.
pub fn greedy_allocation(cfg: &NetworkConfig, static_alloc: &Allocation) -> Result<Allocation> {
    static_alloc.check(cfg.n_channels, static_alloc.total())?;
    let mut loads = static_alloc.counts().to_vec();
    let mut counts = vec![0; cfg.n_channels];
    for _ in 0..cfg.n_dynamic {
        let (target, _) = loads
            .iter()
            .enumerate()
            .min_by_key(|&(i, &load)| (load, i))
            .expect("at least one channel");
        loads[target] += 1;
        counts[target] += 1;
    }
    Ok(Allocation::new(counts))
}
