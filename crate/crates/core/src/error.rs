use thiserror::Error;

/// Errors raised by the geometry, link model, scheme and allocation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid cell radius {0} km: must be positive and finite")]
    InvalidRadius(f64),

    #[error("normalized distance {0} outside (0, 1]")]
    BetaOutOfRange(f64),

    #[error("path-loss distance {0} km must be positive")]
    NonPositiveDistance(f64),

    #[error("gain {0} dB exceeds the maximum PDL (must be <= 0 dB)")]
    PositiveGain(f64),

    #[error("sub-band count must be at least 1")]
    ZeroSubbands,

    #[error("efficiency fraction {0} outside (0, 1)")]
    FractionOutOfRange(f64),

    #[error("coverage margin {0} must be positive")]
    InvalidMargin(f64),

    #[error("level index {index} out of range for scheme with {levels} levels")]
    LevelOutOfRange { index: usize, levels: usize },

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("unknown scheme kind `{0}`")]
    UnknownSchemeKind(String),

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),

    #[error("missing parameter `{param}` for scheme kind `{kind}`")]
    MissingParameter { kind: String, param: &'static str },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid demand {0}: must be positive and finite")]
    InvalidDemand(f64),

    #[error("efficiency matrix is {rows}x{cols}, expected {levels} levels")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        levels: usize,
    },

    #[error("infeasible allocation: circle {0} has no positive efficiency")]
    Infeasible(usize),

    #[error("malformed linear program: {0}")]
    LpShape(String),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex did not converge within {0} pivots")]
    IterationLimit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
