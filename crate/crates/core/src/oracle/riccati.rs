//! Order-by-order solution of the Riccati equation with Laurent-series
//! algebra, independent of the collected index formula used by
//! [`crate::recursion::correction_table`].
//!
//! At order `k >= 1` the equation reads
//! `2 C_0 C_k = -2 m E_k + gamma_k (1+x)^-2 + F delta_{k,2} - C_{k-1}'/r0 - sum_{j=1}^{k-1} C_j C_{k-j}`.
//! Dividing by `2 C_0 = 2 x c(x)` gives `C_k = G - E_k H`, and the residue
//! condition on `C_k` is linear in `E_k`.

use super::laurent::Laurent;
use crate::classical::ClassicalPoint;
use crate::error::{Error, Result};
use crate::recursion::{CentrifugalSplit, QuantumNumbers};
use crate::series::TruncatedSeries;

/// Energy corrections `E_0..=E_K` from the generic Laurent solver.
pub fn riccati_series_solve(
    cp: &ClassicalPoint,
    split: &CentrifugalSplit,
    m: &TruncatedSeries,
    f: &TruncatedSeries,
    qn: &QuantumNumbers,
    k_max: usize,
) -> Result<Vec<f64>> {
    Ok(solve_orders(cp, split, m, f, qn, k_max)?.0)
}

/// Energies together with the Laurent series `C_0..=C_K`.
pub fn solve_orders(
    cp: &ClassicalPoint,
    split: &CentrifugalSplit,
    m: &TruncatedSeries,
    f: &TruncatedSeries,
    qn: &QuantumNumbers,
    k_max: usize,
) -> Result<(Vec<f64>, Vec<Laurent>)> {
    let order = m.order().min(f.order()).min(cp.shape.order());
    if order < 2 * k_max {
        return Err(Error::InsufficientOrder {
            needed: 2 * k_max,
            got: order,
        });
    }
    let r0 = cp.r0;
    // C_0 / x = -omega sqrt(1 + a_1 x + ...)
    let c = cp.shape.truncate(order)?.sqrt()?.scale(-cp.omega);
    if c.coeff(0) == 0.0 {
        return Err(Error::SingularRecursion);
    }
    let half_inv_c0 = Laurent::from_series(&c.scale(2.0).recip()?, -1);
    let inv_r_sq = Laurent::from_series(&TruncatedSeries::binomial(-2.0, order), 0);
    let mass = Laurent::from_series(&m.truncate(order)?, 0);
    let correction = Laurent::from_series(&f.truncate(order)?, 0);
    let h = mass.mul(&half_inv_c0).scale(2.0);
    let h_res = h.require(-1)?;

    let mut logderivs = vec![Laurent::from_series(&c, 1)];
    let mut energies = vec![cp.e0];
    for k in 1..=k_max {
        let mut rhs = inv_r_sq.scale(split.gamma(k, r0));
        if k == 2 {
            rhs = rhs.add(&correction);
        }
        rhs = rhs.sub(&logderivs[k - 1].derivative().scale(1.0 / r0));
        for j in 1..k {
            rhs = rhs.sub(&logderivs[j].mul(&logderivs[k - j]));
        }
        let g = rhs.mul(&half_inv_c0);
        let target = if k == 1 { f64::from(qn.n_r) / r0 } else { 0.0 };
        let e_k = (g.require(-1)? - target) / h_res;
        logderivs.push(g.sub(&h.scale(e_k)));
        energies.push(e_k);
    }
    Ok((energies, logderivs))
}
