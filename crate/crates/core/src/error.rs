use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),

    #[error("Bloch vector norm {0} exceeds 1")]
    NotAState(f64),

    #[error("measurement axis has norm {0}, expected 1")]
    NotUnit(f64),

    #[error("state is not pure (Bloch norm {0})")]
    NotPure(f64),

    #[error("weights sum to {0}, expected 1")]
    WeightSum(f64),

    #[error("angle {0} outside [0, pi]")]
    Angle(f64),

    #[error("sphere grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),

    #[error("axis is not stationary (residual {0:e})")]
    NotStationary(f64),

    #[error("non-finite input")]
    NonFinite,
}

pub type Result<T> = std::result::Result<T, Error>;
