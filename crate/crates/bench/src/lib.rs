//! Shared fixtures for the benchmarks in `benches/`.

use pdm_core::{table1, Problem, QuantumNumbers};

/// The reference-table problem for mass exponent `lambda`.
pub fn table_problem(lambda: f64) -> Problem {
    Problem::coulomb_power_law(table1::Q, table1::M_C, table1::A, lambda).expect("valid table parameters")
}

/// Low and high states used across the benchmarks.
pub fn states() -> [(&'static str, QuantumNumbers); 2] {
    [("0,2", QuantumNumbers::new(0, 2)), ("3,2", QuantumNumbers::new(3, 2))]
}
