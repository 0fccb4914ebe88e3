use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("allocation has {got} channels, expected {expected}")]
    ChannelMismatch { expected: usize, got: usize },

    #[error("allocation sums to {got}, expected {expected}")]
    AllocationTotal { expected: usize, got: usize },

    #[error("no dynamic device in the network")]
    NoDynamicDevice,

    #[error("lambert W is only evaluated on x >= 0, got {0}")]
    LambertDomain(f64),

    #[error("lambert W did not converge for x = {0}")]
    LambertConvergence(f64),

    #[error(
        "{devices} dynamic devices exceed the stationary capacity {capacity:.3} of the network"
    )]
    OverCapacity { devices: usize, capacity: f64 },

    #[error("multiplier search did not converge: sum = {sum}, target = {target}")]
    MultiplierConvergence { sum: f64, target: f64 },

    #[error("instance too large to enumerate ({channels} channels, {devices} devices)")]
    TooLarge { channels: usize, devices: usize },
}
