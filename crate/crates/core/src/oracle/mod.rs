//! Independent validators: a Numerov shooting solver for exact eigenvalues and
//! a generic Laurent-series Riccati solver for the energy corrections.

pub mod laurent;
pub mod numerov;
pub mod riccati;

pub use laurent::Laurent;
pub use numerov::{
    count_nodes, effective_w, numerov_eigenvalue, solve_state, solve_state_with_refinement, NumerovResult, RadialGrid,
    ReducedWave,
};
pub use riccati::{riccati_series_solve, solve_orders};
