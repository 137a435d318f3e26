use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size {m}: {reason}")]
    InvalidSize { m: usize, reason: &'static str },

    #[error("size {m} exceeds the {route} cap of {cap}")]
    SizeCapExceeded { route: &'static str, m: usize, cap: usize },

    #[error("ice rule violated at vertex ({x}, {y}): {ins} in, {outs} out")]
    IceRuleViolation { x: i32, y: i32, ins: usize, outs: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("vertex ({x}, {y}) is outside the domain")]
    OutOfDomain { x: i32, y: i32 },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("pole at xi = {xi}: {what}")]
    Pole { xi: f64, what: &'static str },

    #[error("omega_0 vanishes")]
    ZeroOmegaZero,

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("parameters outside the valid region: {0}")]
    InvalidRegion(String),

    #[error("non-finite value: {0}")]
    NonFiniteValue(&'static str),

    #[error("degenerate spectral parameters: {0}")]
    DegenerateSpectral(&'static str),

    #[error("parameters are not near a free-fermion limit")]
    NotALimitCase,

    #[error("parameters violate the disordered regime: {0}")]
    PhaseViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
