use thiserror::Error;

/// Errors raised by the walk, spectral and limit-law routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin angle {0} is outside the open interval (0, pi/2)")]
    InvalidAngle(f64),

    #[error("initial amplitudes are not normalized: |alpha|^2 + |beta|^2 = {norm}")]
    NotNormalized { norm: f64 },

    #[error("amplitude is not finite")]
    NonFinite,

    #[error("horizon must be at least {min}, got {got}")]
    HorizonTooSmall { got: usize, min: usize },

    #[error("schedule covers {len} steps but {steps} were requested")]
    ScheduleTooShort { len: usize, steps: usize },

    #[error("momentum grid of size {size} is too small; need at least {min} nodes")]
    GridTooSmall { size: usize, min: usize },

    #[error("eigenpair residual {residual:e} at grid node {node} exceeds tolerance")]
    EigenResidual { node: usize, residual: f64 },

    #[error("support parameter a = {0} is outside (0, 1)")]
    InvalidSupport(f64),

    #[error("asymmetry coefficient c0 = {c0} violates |c0| <= 1/a = {bound}")]
    InfeasibleAsymmetry { c0: f64, bound: f64 },

    #[error("probability masses are invalid: {0}")]
    InvalidDistribution(String),

    #[error("distribution at time 0 cannot be rescaled by t")]
    ZeroTime,

    #[error("scaling fit needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("sample {index} has non-positive time or spread (t = {t}, sigma = {sigma})")]
    NonPositiveSample { index: usize, t: f64, sigma: f64 },

    #[error("cannot step a state at time 0 backwards")]
    TimeUnderflow,
}

pub type Result<T> = std::result::Result<T, Error>;
