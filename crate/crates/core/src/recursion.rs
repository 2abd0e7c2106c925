//! The coefficient table `C_i^k` of the logarithmic-derivative expansion and
//! the energy corrections `E_k`.
//!
//! Order `k` of the log-derivative is a Laurent series
//! `C_k(x) = x^{1-2k} sum_i C_i^k x^i`. Rows are filled strictly in order of
//! increasing `k`, and within a row in order of increasing `i`: the entry at
//! `i = 2k - 2` is fixed by the node-count condition and releases `E_k`, and
//! every later entry of the row depends on `E_k`.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::classical::ClassicalPoint;
use crate::error::{Error, Result};
use crate::models::{qpf_series, AmbiguitySet, MassModel, MassTerms, PotentialModel, RadialProfile};
use crate::series::TruncatedSeries;

pub const DEFAULT_ORDER: usize = 5;
pub const MAX_ORDER: usize = 12;
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n_r: u32,
    pub l: u32,
    pub hbar: f64,
}

impl QuantumNumbers {
    pub fn new(n_r: u32, l: u32) -> Self {
        Self { n_r, l, hbar: 1.0 }
    }

    pub fn with_hbar(n_r: u32, l: u32, hbar: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar = {hbar} must be positive")));
        }
        Ok(Self { n_r, l, hbar })
    }

    /// Principal number `n = n_r + l + 1`.
    pub fn principal(&self) -> u32 {
        self.n_r + self.l + 1
    }
}

/// `hbar^2 l(l+1) = Lambda^2 + hbar A Lambda + hbar^2 B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentrifugalSplit {
    pub big_lambda: f64,
    pub a: f64,
    pub b: f64,
}

impl CentrifugalSplit {
    /// `gamma_k` coefficient of `(r0/r)^2` at order `k`.
    pub fn gamma(&self, k: usize, r0: f64) -> f64 {
        match k {
            1 => self.a * self.big_lambda / (r0 * r0),
            2 => self.b / (r0 * r0),
            _ => 0.0,
        }
    }

    /// Left side minus right side of the defining identity.
    pub fn identity_residual(&self, qn: &QuantumNumbers) -> f64 {
        let h = qn.hbar;
        let l = f64::from(qn.l);
        self.big_lambda * self.big_lambda + h * self.a * self.big_lambda + h * h * self.b - h * h * l * (l + 1.0)
    }
}

/// The split that makes the zeroth order reproduce the Balmer formula for
/// constant mass: `Lambda = hbar n`, `A = -2 n_r - 1`, `B = n_r^2 + n_r`.
pub fn centrifugal_split(qn: &QuantumNumbers) -> CentrifugalSplit {
    let n_r = f64::from(qn.n_r);
    CentrifugalSplit {
        big_lambda: qn.hbar * f64::from(qn.principal()),
        a: -2.0 * n_r - 1.0,
        b: n_r * n_r + n_r,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionTable {
    /// `rows[k][i] = C_i^k` for `k = 0..=K`, `i = 0..=2K+2`.
    rows: Vec<Vec<f64>>,
    /// `E_0..=E_K`.
    energies: Vec<f64>,
    pub r0: f64,
    pub omega: f64,
}

impl CorrectionTable {
    pub fn order(&self) -> usize {
        self.energies.len() - 1
    }

    pub fn coeff(&self, k: usize, i: usize) -> f64 {
        self.rows[k][i]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.rows[k]
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }
}

/// Highest `i` stored per row for a table of order `k_max`.
pub fn row_len(k_max: usize) -> usize {
    2 * k_max + 2
}

/// Fills the coefficient table and the energy corrections up to order `k_max`.
///
/// `m` and `f` are the Taylor series of the mass and of the correction term
/// `F`; they and `cp.c0` must reach order `2 k_max + 2`.
pub fn correction_table(
    cp: &ClassicalPoint,
    split: &CentrifugalSplit,
    m: &TruncatedSeries,
    f: &TruncatedSeries,
    qn: &QuantumNumbers,
    k_max: usize,
) -> Result<CorrectionTable> {
    let i_max = row_len(k_max);
    for s in [&cp.c0, m, f] {
        if s.order() < i_max {
            return Err(Error::InsufficientOrder {
                needed: i_max,
                got: s.order(),
            });
        }
    }
    let c00 = cp.c0.coeff(0);
    if c00 == 0.0 {
        return Err(Error::SingularRecursion);
    }
    let r0 = cp.r0;
    let m0 = m.coeff(0);
    let n_r = f64::from(qn.n_r);

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(k_max + 1);
    rows.push(cp.c0.coeffs()[..=i_max].to_vec());
    let mut energies = Vec::with_capacity(k_max + 1);
    energies.push(cp.e0);

    for k in 1..=k_max {
        let gamma = split.gamma(k, r0);
        let f_on = k == 2;
        let pivot = 2 * k - 2;
        let mut row = vec![0.0; i_max + 1];
        // 2 m_0 E_k, available once the pivot entry is set
        let mut two_m0_ek = 0.0;

        for i in 0..=i_max {
            if i == pivot {
                row[i] = if k == 1 { n_r / r0 } else { 0.0 };
                let prev = &rows[k - 1];
                let mut pair_sum = 0.0;
                for j in 0..=k {
                    for p in 0..=pivot {
                        let left = if j == k { row[p] } else { rows[j][p] };
                        let right = if j == 0 { row[pivot - p] } else { rows[k - j][pivot - p] };
                        pair_sum += left * right;
                    }
                }
                let f0 = if f_on { f.coeff(0) } else { 0.0 };
                two_m0_ek = gamma + f0 - prev[pivot] / r0 - pair_sum;
                energies.push(two_m0_ek / (2.0 * m0));
                continue;
            }

            let shift = 3.0 - 2.0 * k as f64 + i as f64;
            let mut acc = 0.0;
            if i >= pivot {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                acc += gamma * sign * shift;
                if f_on && i >= 2 {
                    acc += f.coeff(i - 2);
                }
                acc -= m.coeff(i - pivot) / m0 * two_m0_ek;
            }
            acc -= shift / r0 * rows[k - 1][i];
            for j in 1..k {
                acc -= (0..=i).map(|p| rows[j][p] * rows[k - j][i - p]).sum::<f64>();
            }
            acc -= 2.0 * (1..=i).map(|p| rows[0][p] * row[i - p]).sum::<f64>();
            row[i] = acc / (2.0 * c00);
        }
        rows.push(row);
    }

    let table = CorrectionTable {
        rows,
        energies,
        r0,
        omega: cp.omega,
    };
    for k in 1..=k_max {
        let expected = if k == 1 { n_r / r0 } else { 0.0 };
        debug_assert_eq!(table.coeff(k, 2 * k - 2), expected);
    }
    if table
        .rows
        .iter()
        .flatten()
        .chain(&table.energies)
        .any(|c| !c.is_finite())
    {
        return Err(Error::Domain("non-finite entry in the correction table".into()));
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub qn: QuantumNumbers,
    /// `E^(k) = E_0 + E_1 hbar + ... + E_k hbar^k`.
    pub partials: Vec<f64>,
    /// `E_k`, hbar-stripped.
    pub corrections: Vec<f64>,
    pub r0: f64,
    pub omega: f64,
    pub e_oracle: Option<f64>,
    pub converged: bool,
    /// Stable orbit roots seen by the scan; the smallest one was used.
    pub stable_roots: usize,
}

impl SpectrumResult {
    pub fn energy(&self) -> f64 {
        *self.partials.last().expect("at least E_0")
    }
}

/// Accumulates the partial sums; the result counts as converged when the last
/// increment is below `tol` relative to the last partial sum.
pub fn partial_sums(table: &CorrectionTable, qn: &QuantumNumbers, tol: f64) -> SpectrumResult {
    let (partials, converged) = accumulate(table.energies(), qn.hbar, tol);
    SpectrumResult {
        qn: *qn,
        partials,
        corrections: table.energies().to_vec(),
        r0: table.r0,
        omega: table.omega,
        e_oracle: None,
        converged,
        stable_roots: 1,
    }
}

fn accumulate(corrections: &[f64], hbar: f64, tol: f64) -> (Vec<f64>, bool) {
    let mut partials = Vec::with_capacity(corrections.len());
    let mut sum = 0.0;
    let mut weight = 1.0;
    let mut last = f64::INFINITY;
    for e in corrections {
        last = e * weight;
        sum += last;
        partials.push(sum);
        weight *= hbar;
    }
    let converged = corrections.len() > 1 && last.abs() < tol * sum.abs();
    (partials, converged)
}

/// Everything produced while expanding one state.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub qn: QuantumNumbers,
    pub split: CentrifugalSplit,
    pub classical: ClassicalPoint,
    pub mass_series: TruncatedSeries,
    pub terms: MassTerms,
    pub table: CorrectionTable,
}

/// A mass profile, a potential and an operator ordering.
#[derive(Debug, Clone)]
pub struct Problem {
    pub mass: MassModel,
    pub potential: PotentialModel,
    pub ambiguity: AmbiguitySet,
}

impl Problem {
    pub fn new(mass: MassModel, potential: PotentialModel) -> Self {
        Self {
            mass,
            potential,
            ambiguity: AmbiguitySet::default(),
        }
    }

    pub fn with_ambiguity(mut self, ambiguity: AmbiguitySet) -> Self {
        self.ambiguity = ambiguity;
        self
    }

    /// Coulomb potential with the power-law mass `m_c / (1 + a r)^lambda`.
    pub fn coulomb_power_law(q: f64, m_c: f64, a: f64, lambda: f64) -> Result<Self> {
        Ok(Self::new(
            MassModel::power_law(m_c, a, lambda)?,
            PotentialModel::coulomb(q)?,
        ))
    }

    pub fn expand(&self, qn: &QuantumNumbers, k_max: usize) -> Result<Expansion> {
        if k_max > MAX_ORDER {
            return Err(Error::InvalidParameter(format!(
                "order {k_max} exceeds the cap {MAX_ORDER}; the series is asymptotic and diverges at high order"
            )));
        }
        if k_max > 8 {
            warn!("order {k_max}: high orders of an asymptotic series may diverge");
        }
        let split = centrifugal_split(qn);
        let i_max = row_len(k_max);
        let classical = ClassicalPoint::compute(&self.mass, &self.potential, split.big_lambda, i_max)?;
        let r0 = classical.r0;
        let mass_series = self.mass.taylor(r0, i_max + 2)?;
        let terms = qpf_series(&mass_series, &self.ambiguity, r0, i_max)?;
        let table = correction_table(&classical, &split, &mass_series, &terms.f, qn, k_max)?;
        Ok(Expansion {
            qn: *qn,
            split,
            classical,
            mass_series,
            terms,
            table,
        })
    }

    pub fn spectrum(&self, qn: &QuantumNumbers, k_max: usize) -> Result<SpectrumResult> {
        let exp = self.expand(qn, k_max)?;
        let mut result = partial_sums(&exp.table, qn, DEFAULT_CONVERGENCE_TOL);
        result.stable_roots = exp.classical.stable_roots;
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn split_examples() {
        let s = centrifugal_split(&QuantumNumbers::new(0, 2));
        assert_eq!((s.big_lambda, s.a, s.b), (3.0, -1.0, 0.0));
        assert_eq!(9.0 - 3.0 + 0.0, 6.0);
        let s = centrifugal_split(&QuantumNumbers::new(1, 1));
        assert_eq!((s.big_lambda, s.a, s.b), (3.0, -3.0, 2.0));
        let s = centrifugal_split(&QuantumNumbers::new(0, 0));
        assert_eq!((s.big_lambda, s.a, s.b), (1.0, -1.0, 0.0));
        for n_r in 0..6 {
            for l in 0..6 {
                for hbar in [1.0, 0.5, 0.3] {
                    let qn = QuantumNumbers::with_hbar(n_r, l, hbar).unwrap();
                    assert!(centrifugal_split(&qn).identity_residual(&qn).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn partial_sum_examples() {
        let (p, _) = accumulate(&[-1.77778, -0.16666, 0.11111], 1.0, 1e-4);
        assert_relative_eq!(p[1], -1.94444, epsilon = 1e-12);
        assert_relative_eq!(p[2], -1.83333, epsilon = 1e-12);
        let (p, converged) = accumulate(&[-2.0, 0.0, 0.0, 0.0], 1.0, 1e-4);
        assert_eq!(p, vec![-2.0; 4]);
        assert!(converged);
        let (p, _) = accumulate(&[1.0, 1.0, 1.0], 0.5, 1e-4);
        assert_eq!(p, vec![1.0, 1.5, 1.75]);
    }

    #[test]
    fn balmer_is_exact_at_zeroth_order() {
        let problem = Problem::coulomb_power_law(10.0, 0.5, 0.0, 0.0).unwrap();
        let r = problem.spectrum(&QuantumNumbers::new(0, 2), 5).unwrap();
        assert_relative_eq!(r.corrections[0], -0.5 * 100.0 / 18.0, max_relative = 1e-12);
        for e in &r.corrections[1..] {
            assert!(e.abs() < 1e-10 * r.corrections[0].abs(), "{:?}", r.corrections);
        }
        assert!(r.converged);
    }

    #[test]
    fn table_one_first_correction() {
        let problem = Problem::coulomb_power_law(10.0, 0.5, 0.1, 2.0).unwrap();
        let r = problem.spectrum(&QuantumNumbers::new(0, 2), 6).unwrap();
        assert_relative_eq!(r.corrections[1], -1.0 / 6.0, max_relative = 1e-10);
        assert_relative_eq!(r.partials[1].abs(), 1.94444, epsilon = 5e-6);
        let scale = r.partials[4].abs();
        assert!(r.corrections[5].abs() < 1e-9 * scale);
        assert!(r.corrections[6].abs() < 1e-9 * scale);
    }

    #[test]
    fn quantization_entries_are_pinned() {
        let problem = Problem::coulomb_power_law(10.0, 0.5, 0.1, 3.0).unwrap();
        let exp = problem.expand(&QuantumNumbers::new(2, 1), 6).unwrap();
        let r0 = exp.table.r0;
        assert_eq!(exp.table.coeff(1, 0), 2.0 / r0);
        for k in 2..=6 {
            assert_eq!(exp.table.coeff(k, 2 * k - 2), 0.0);
        }
    }

    #[test]
    fn insufficient_order_is_reported() {
        let problem = Problem::coulomb_power_law(10.0, 0.5, 0.1, 3.0).unwrap();
        let exp = problem.expand(&QuantumNumbers::new(0, 1), 2).unwrap();
        let err = correction_table(&exp.classical, &exp.split, &exp.mass_series, &exp.terms.f, &exp.qn, 3).unwrap_err();
        assert!(matches!(err, Error::InsufficientOrder { needed: 8, .. }));
    }

    #[test]
    fn order_cap() {
        let problem = Problem::coulomb_power_law(10.0, 0.5, 0.1, 3.0).unwrap();
        assert!(problem.expand(&QuantumNumbers::new(0, 1), MAX_ORDER + 1).is_err());
        assert!(problem.expand(&QuantumNumbers::new(0, 1), MAX_ORDER).is_ok());
    }
}
