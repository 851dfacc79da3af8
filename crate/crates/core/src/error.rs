use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("odd Bernoulli index {0} requested (only B_1 is nonzero)")]
    OddBernoulli(usize),
    #[error("log of zero")]
    LogOfZero,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("n = {n} is below the closed-form threshold {threshold}; use the oracle")]
    BelowThreshold { n: usize, threshold: usize },
    #[error("the oracle does not support {0}")]
    OracleUnsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("polynomial has no constant Gaussian moment; cannot normalize")]
    DegenerateMoment,
    #[error("model text, line {line}: {msg}")]
    ModelText { line: usize, msg: String },
    #[error("coefficient {0} is zero; series looks vanishing")]
    ZeroCoefficient(usize),
    #[error("need exact coefficients on {lo}..={hi}")]
    InsufficientRange { lo: usize, hi: usize },
    #[error("heat trace level cutoff {0} exceeds the safety bound")]
    CutoffTooLarge(u64),
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
