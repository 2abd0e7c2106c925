//! The benchmark configuration `q = 10`, `a = 0.1`, `hbar = 1`, `m_c = 0.5`
//! and its reference absolute energies, rounded to five decimals.

use crate::error::Result;
use crate::recursion::{Problem, QuantumNumbers};

pub const Q: f64 = 10.0;
pub const A: f64 = 0.1;
pub const M_C: f64 = 0.5;
pub const HBAR: f64 = 1.0;
pub const ORDER: usize = 5;

pub const LAMBDAS: [f64; 4] = [2.0, 3.0, -2.0, -3.0];
pub const STATES: [(u32, u32); 2] = [(0, 2), (1, 1)];

/// `|E^(k)|` for `k = 0..=5`; columns run over `STATES` (outer) and
/// `LAMBDAS` (inner).
pub const PARTIALS: [[f64; 8]; 6] = [
    [1.77778, 1.18817, 3.64395, 4.04566, 1.77778, 1.18817, 3.64395, 4.04566],
    [1.94444, 1.45345, 3.50153, 3.83753, 2.27778, 1.98401, 3.21669, 3.42127],
    [1.83333, 1.25876, 3.58047, 3.94991, 2.07556, 1.66974, 3.39891, 3.69143],
    [1.83000, 1.24978, 3.57934, 3.94732, 2.05556, 1.61180, 3.39064, 3.67228],
    [1.83111, 1.25190, 3.58015, 3.94898, 2.06000, 1.62647, 3.39352, 3.67887],
    [1.83111, 1.25184, 3.58014, 3.94896, 2.06000, 1.62478, 3.39330, 3.67837],
];

/// `|E_num|` from direct integration, same column order.
pub const NUMERIC: [f64; 8] = [1.83111, 1.25183, 3.58014, 3.94897, 2.06000, 1.62510, 3.39329, 3.67834];

/// One column of the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Column {
    pub index: usize,
    pub lambda: f64,
    pub n_r: u32,
    pub l: u32,
}

impl Column {
    pub fn problem(&self) -> Result<Problem> {
        Problem::coulomb_power_law(Q, M_C, A, self.lambda)
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        QuantumNumbers {
            n_r: self.n_r,
            l: self.l,
            hbar: HBAR,
        }
    }
}

pub fn columns() -> impl Iterator<Item = Column> {
    STATES.iter().enumerate().flat_map(|(s, &(n_r, l))| {
        LAMBDAS.iter().enumerate().map(move |(j, &lambda)| Column {
            index: 4 * s + j,
            lambda,
            n_r,
            l,
        })
    })
}

/// Whether `|value|` rounds to `reference` at five decimals.
pub fn matches_5dp(value: f64, reference: f64) -> bool {
    format!("{:.5}", value.abs()) == format!("{:.5}", reference)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_layout() {
        let cols: Vec<_> = columns().collect();
        assert_eq!(cols.len(), 8);
        assert_eq!((cols[1].lambda, cols[1].n_r, cols[1].l), (3.0, 0, 2));
        assert_eq!((cols[6].lambda, cols[6].n_r, cols[6].l), (-2.0, 1, 1));
        assert!(cols.iter().enumerate().all(|(i, c)| c.index == i));
    }

    #[test]
    fn rounding_comparison() {
        assert!(matches_5dp(-1.831111111, 1.83111));
        assert!(matches_5dp(1.625104, 1.62510));
        assert!(!matches_5dp(1.625106, 1.62510));
    }
}
