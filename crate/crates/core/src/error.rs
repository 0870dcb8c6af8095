use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A gamma function argument landed on a non-positive integer.
    #[error("gamma pole at argument {argument}")]
    Pole { argument: String },

    #[error("exact mode cannot evaluate {what}: non-integer gamma ratio")]
    Mode { what: String },

    #[error("order must be positive, got {0}")]
    NonPositiveOrder(String),

    #[error("gamma must lie in [0, 1], got {0}")]
    GammaOutOfRange(String),

    #[error("composition requires a shared gamma, got {left} and {right}")]
    GammaMismatch { left: String, right: String },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("backward difference of order {order} needs more than {len} samples")]
    InsufficientSamples { order: usize, len: usize },

    #[error("index {index} out of range for grid of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("grid function needs at least one sample")]
    EmptyGrid,

    #[error("non-finite value encountered")]
    NonFinite,

    #[error("cannot parse {input:?} as a {mode} scalar")]
    Parse { input: String, mode: &'static str },
}
