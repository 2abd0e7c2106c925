use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series of order {got} is too short, order {needed} required")]
    InsufficientOrder { needed: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no stable orbit: {0}")]
    NoStableOrbit(String),

    #[error("unstable orbit: omega^2 = {omega_sq:e} <= 0 at every root of the orbit equation")]
    UnstableOrbit { omega_sq: f64 },

    #[error("degenerate denominator 2 m_0 + m_1 = 0")]
    DegenerateDenominator,

    #[error("singular recursion: C_0^0 = 0")]
    SingularRecursion,

    #[error("state n_r = {n_r}, l = {l} not found: {reason}")]
    StateNotFound { n_r: u32, l: u32, reason: String },

    #[error("eigenvalue search did not converge after {iterations} iterations (bracket [{lo}, {hi}])")]
    NotConverged { iterations: usize, lo: f64, hi: f64 },

    #[error("inconsistent level ordering: {0}")]
    OrderingMismatch(String),
}
