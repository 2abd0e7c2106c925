//! Coulomb potential `-q/r` with the power-law mass `m_c / (1 + a r)^lambda`:
//! closed forms for the first corrections and the ordering of levels that
//! share the principal number `n`.

use serde::{Deserialize, Serialize};

use crate::classical::{find_orbit_radius, leading_frequency};
use crate::error::{Error, Result};
use crate::models::{MassModel, PotentialModel, RadialProfile};
use crate::oracle::numerov::solve_state;
use crate::recursion::{centrifugal_split, Problem, QuantumNumbers};

const DEGENERACY_TOL: f64 = 1e-11;

/// Parameters of the power-law Coulomb family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawCoulomb {
    pub m_c: f64,
    pub a: f64,
    pub lambda: f64,
    pub q: f64,
}

impl PowerLawCoulomb {
    pub fn new(m_c: f64, a: f64, lambda: f64, q: f64) -> Result<Self> {
        // both constructors validate
        MassModel::power_law(m_c, a, lambda)?;
        PotentialModel::coulomb(q)?;
        Ok(Self { m_c, a, lambda, q })
    }

    pub fn mass(&self) -> MassModel {
        MassModel::PowerLaw {
            m_c: self.m_c,
            a: self.a,
            lambda: self.lambda,
        }
    }

    pub fn potential(&self) -> PotentialModel {
        PotentialModel::Coulomb { q: self.q }
    }

    pub fn problem(&self) -> Problem {
        Problem::new(self.mass(), self.potential())
    }

    /// Constant-mass energy `-m_c q^2 / (2 hbar^2 n^2)`.
    pub fn balmer(&self, qn: &QuantumNumbers) -> f64 {
        let n = f64::from(qn.principal());
        -self.m_c * self.q * self.q / (2.0 * qn.hbar * qn.hbar * n * n)
    }

    /// Orbit radius and the derived quantities `t`, `s`.
    pub fn geometry(&self, qn: &QuantumNumbers) -> Result<OrbitGeometry> {
        let big_lambda = centrifugal_split(qn).big_lambda;
        let r0 = find_orbit_radius(&self.mass(), &self.potential(), big_lambda)?;
        let t = 1.0 + self.a * r0;
        let s = t.powf(self.lambda) - 0.5 * self.lambda * (t.powf(self.lambda) - t.powf(self.lambda - 1.0));
        if !(s > 0.0) {
            return Err(Error::NoStableOrbit(format!("s = {s} <= 0 at r0 = {r0}")));
        }
        Ok(OrbitGeometry {
            r0,
            big_lambda,
            t,
            s,
            e_b: self.balmer(qn),
        })
    }

    /// Oscillation frequency about the orbit from the closed form.
    pub fn omega(&self, r0: f64) -> Result<f64> {
        let u = self.a * r0;
        let l = self.lambda;
        let t = 1.0 + u;
        let num = self.m_c * self.q * t.powf(-l - 1.0) * (u * u * (2.0 - l) * (1.0 - l) + 2.0 * u * (2.0 - l) + 2.0);
        let den = r0 * (2.0 + (2.0 - l) * u);
        let omega_sq = num / den;
        if !(omega_sq > 0.0) || !den.is_finite() || den == 0.0 {
            return Err(Error::UnstableOrbit { omega_sq });
        }
        Ok(omega_sq.sqrt())
    }

    /// `a_1`, `a_2` of the leading shape series at the orbit.
    fn shape_coefficients(&self, r0: f64) -> Result<(f64, f64)> {
        let m = self.mass().taylor(r0, 4)?;
        let v = self.potential().taylor(r0, 4)?;
        let (_, shape) = leading_frequency(&m, &v, 2)?;
        Ok((shape.coeff(1), shape.coeff(2)))
    }

    /// The bracket `g` of the second-order correction.
    fn g(&self, geo: &OrbitGeometry, omega: f64) -> Result<f64> {
        let (a1, a2) = self.shape_coefficients(geo.r0)?;
        let l = self.lambda;
        let u = self.a * geo.r0;
        let bl = geo.big_lambda;
        let wr = omega * geo.r0;
        let first = -8.0 * bl * bl * (u * (l - 2.0) - 2.0).powi(2);
        let second = -8.0
            * bl
            * wr
            * (6.0 * (1.0 + a1) - 3.0 * u * u * (l - 2.0) * (1.0 + l + a1)
                + u * (12.0 * (1.0 + a1) - l * (3.0 * a1 - 4.0)));
        let third = -wr
            * wr
            * (u * u * (16.0 * l * l + 15.0 * a1 * a1 + 8.0 * l * (3.0 * a1 + 1.0) - 12.0 * a2 - 8.0)
                + 2.0 * u * (15.0 * a1 * a1 + 12.0 * l * a1 - 12.0 * a2 - 8.0)
                + 15.0 * a1 * a1
                - 12.0 * a2
                - 8.0);
        Ok(first + second + third)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitGeometry {
    pub r0: f64,
    pub big_lambda: f64,
    /// `1 + a r0`.
    pub t: f64,
    /// `t^lambda - (lambda/2)(t^lambda - t^(lambda-1))`; `r0 = Lambda^2 s / (m_c q)`.
    pub s: f64,
    /// Constant-mass energy of the same `n`.
    pub e_b: f64,
}

impl OrbitGeometry {
    /// `r0 m_c q - Lambda^2 s`, relative to `r0 m_c q`.
    pub fn orbit_identity_residual(&self, p: &PowerLawCoulomb) -> f64 {
        let lhs = self.r0 * p.m_c * p.q;
        (lhs - self.big_lambda * self.big_lambda * self.s) / lhs
    }
}

/// Closed-form `E_0` and `E_1`.
pub fn closed_e0_e1(p: &PowerLawCoulomb, qn: &QuantumNumbers) -> Result<(f64, f64)> {
    let geo = p.geometry(qn)?;
    let omega = p.omega(geo.r0)?;
    let (r0, bl) = (geo.r0, geo.big_lambda);
    let tl = geo.t.powf(p.lambda);
    let e0 = -p.q / r0 + bl * bl * tl / (2.0 * p.m_c * r0 * r0);
    let e1 = (2.0 * f64::from(qn.n_r) + 1.0) * tl * (omega * r0 - bl) / (2.0 * p.m_c * r0 * r0);
    Ok((e0, e1))
}

/// `E_0 + hbar E_1` written around the constant-mass energy.
pub fn first_order_sum(p: &PowerLawCoulomb, qn: &QuantumNumbers) -> Result<f64> {
    let geo = p.geometry(qn)?;
    let omega = p.omega(geo.r0)?;
    let (bl, s) = (geo.big_lambda, geo.s);
    let tl = geo.t.powf(p.lambda);
    let shift = qn.hbar * (2.0 * f64::from(qn.n_r) + 1.0) * (omega * geo.r0 / bl - 1.0) / bl * tl;
    Ok(geo.e_b + p.m_c * p.q * p.q / (2.0 * s * s * bl * bl) * (tl - 1.0 + (s - 1.0).powi(2) + shift))
}

/// `omega r0 / Lambda - 1` evaluated directly and through the factored form
/// whose sign is that of `-lambda`.
pub fn frequency_shift(p: &PowerLawCoulomb, qn: &QuantumNumbers) -> Result<(f64, f64)> {
    let geo = p.geometry(qn)?;
    let omega = p.omega(geo.r0)?;
    let ratio = omega * geo.r0 / geo.big_lambda;
    let u = p.a * geo.r0;
    let factored = -p.lambda * u * (2.0 + (3.0 - p.lambda) * u) / (2.0 * (ratio + 1.0) * geo.t * geo.t);
    Ok((ratio - 1.0, factored))
}

/// The `(n_r^2 + n_r)` part of `E_2`; the remaining `f(n)` is common to all
/// levels of the same `n` and is not returned.
pub fn e2_nr_part(p: &PowerLawCoulomb, qn: &QuantumNumbers) -> Result<f64> {
    let n_r = f64::from(qn.n_r);
    Ok((n_r * n_r + n_r) * e2_unit(p, qn)?)
}

/// `t^(lambda-2) g / (16 m_c omega^2 r0^4)`.
fn e2_unit(p: &PowerLawCoulomb, qn: &QuantumNumbers) -> Result<f64> {
    let geo = p.geometry(qn)?;
    let omega = p.omega(geo.r0)?;
    let g = p.g(&geo, omega)?;
    Ok(geo.t.powf(p.lambda - 2.0) * g / (16.0 * p.m_c * omega * omega * geo.r0.powi(4)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderingSign {
    /// `E(n_r, l) < E(n_r - 1, l + 1)`: larger `l` lies higher.
    Normal,
    /// `E(n_r, l) > E(n_r - 1, l + 1)`.
    Inverted,
    Degenerate,
}

impl OrderingSign {
    pub fn predicted(lambda: f64, a: f64) -> Self {
        if lambda == 0.0 || a == 0.0 {
            Self::Degenerate
        } else if lambda > 0.0 {
            Self::Normal
        } else {
            Self::Inverted
        }
    }

    /// Ordering implied by `E(n_r, l) - E(n_r - 1, l + 1)`.
    pub fn from_difference(diff: f64) -> Self {
        if diff < 0.0 {
            Self::Normal
        } else if diff > 0.0 {
            Self::Inverted
        } else {
            Self::Degenerate
        }
    }
}

/// Predicted order of `(n_r, l)` against `(n_r - 1, l + 1)` from the sign of
/// `lambda`, cross-checked against the sign of `omega r0 / Lambda - 1`.
pub fn level_order(p: &PowerLawCoulomb, qn: &QuantumNumbers) -> Result<OrderingSign> {
    if qn.n_r == 0 {
        return Err(Error::InvalidParameter("level ordering needs n_r >= 1".into()));
    }
    let predicted = OrderingSign::predicted(p.lambda, p.a);
    let (direct, factored) = frequency_shift(p, qn)?;
    let tol = 1e-12;
    let from_shift = if direct.abs() <= tol {
        OrderingSign::Degenerate
    } else {
        OrderingSign::from_difference(direct)
    };
    if from_shift != predicted || direct.signum() != factored.signum() && direct.abs() > tol {
        return Err(Error::OrderingMismatch(format!(
            "lambda = {} predicts {predicted:?}, omega r0 / Lambda - 1 = {direct:e} (factored {factored:e})",
            p.lambda
        )));
    }
    Ok(predicted)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelEnergy {
    pub n_r: u32,
    pub l: u32,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingReport {
    pub n: u32,
    pub n_r: u32,
    /// `(n_r - 1, l + 1)`, `(n_r, l)`, `(n_r + 1, l - 1)` from the second-order
    /// partial sums.
    pub energies: [LevelEnergy; 3],
    /// Ratio from the closed forms; `None` when degenerate.
    pub r_closed: Option<f64>,
    /// Ratio from the second-order partial sums; `None` when degenerate.
    pub r_series: Option<f64>,
    pub b1: f64,
    pub b2: f64,
    pub ordering: OrderingSign,
    pub degenerate: bool,
}

/// Ratio of successive spacings among the levels of principal number `n`
/// around `(n_r, n - n_r - 1)`.
pub fn spacing_ratio(p: &PowerLawCoulomb, n: u32, n_r: u32, hbar: f64) -> Result<SpacingReport> {
    check_triplet(n, n_r)?;
    let l = n - n_r - 1;
    let qn = QuantumNumbers::with_hbar(n_r, l, hbar)?;
    let geo = p.geometry(&qn)?;
    let omega = p.omega(geo.r0)?;
    let bl = geo.big_lambda;
    let b1 = hbar * hbar * e2_unit(p, &qn)?;
    let b2 = p.m_c * p.q * p.q * geo.t.powf(p.lambda) * hbar / (bl.powi(3) * geo.s * geo.s)
        * (omega * geo.r0 / bl - 1.0)
        + b1;

    let problem = p.problem();
    let mut energies = [LevelEnergy {
        n_r: 0,
        l: 0,
        energy: 0.0,
    }; 3];
    for (slot, (nr, ll)) in energies.iter_mut().zip(triplet(n_r, l)) {
        let s = problem.spectrum(&QuantumNumbers::with_hbar(nr, ll, hbar)?, 2)?;
        *slot = LevelEnergy {
            n_r: nr,
            l: ll,
            energy: s.partials[2],
        };
    }
    // spacings at rounding level count as degenerate
    let floor = DEGENERACY_TOL * geo.e_b.abs();
    let e = energies.map(|e| e.energy);
    let r_series = if (e[1] - e[2]).abs() <= floor { None } else { ratio(&e) };
    let r_closed = if b2.abs() <= floor {
        None
    } else {
        let x = b1 / b2;
        let den = 1.0 + (2.0 * f64::from(n_r) + 1.0) * x;
        (den != 0.0).then(|| (1.0 + (2.0 * f64::from(n_r) - 1.0) * x) / den)
    };
    Ok(SpacingReport {
        n,
        n_r,
        energies,
        r_closed,
        r_series,
        b1,
        b2,
        ordering: OrderingSign::predicted(p.lambda, p.a),
        degenerate: r_closed.is_none() || r_series.is_none(),
    })
}

/// Exact energies of the three levels and their spacing ratio from the
/// Numerov solver.
pub fn numerov_spacing(p: &PowerLawCoulomb, n: u32, n_r: u32, hbar: f64) -> Result<([LevelEnergy; 3], Option<f64>)> {
    check_triplet(n, n_r)?;
    let l = n - n_r - 1;
    let problem = p.problem();
    let mut energies = [LevelEnergy {
        n_r: 0,
        l: 0,
        energy: 0.0,
    }; 3];
    for (slot, (nr, ll)) in energies.iter_mut().zip(triplet(n_r, l)) {
        let res = solve_state(&problem, &QuantumNumbers::with_hbar(nr, ll, hbar)?)?;
        *slot = LevelEnergy {
            n_r: nr,
            l: ll,
            energy: res.energy,
        };
    }
    let r = ratio(&energies.map(|e| e.energy));
    Ok((energies, r))
}

/// `(E_a - E_b) / (E_b - E_c)` for levels ordered by increasing `n_r`.
pub fn ratio(e: &[f64; 3]) -> Option<f64> {
    let den = e[1] - e[2];
    (den != 0.0).then(|| (e[0] - e[1]) / den)
}

fn triplet(n_r: u32, l: u32) -> [(u32, u32); 3] {
    [(n_r - 1, l + 1), (n_r, l), (n_r + 1, l - 1)]
}

fn check_triplet(n: u32, n_r: u32) -> Result<()> {
    if n < 3 || n_r < 1 || n_r + 2 > n {
        return Err(Error::InvalidParameter(format!(
            "three levels need n >= 3 and 1 <= n_r <= n - 2, got n = {n}, n_r = {n_r}"
        )));
    }
    Ok(())
}

/// Energy differences below this count as a degeneracy when the mass is
/// constant; it matches the Numerov grid-convergence level.
pub const DEGENERATE_ENERGY_TOL: f64 = 1e-7;

/// Exact levels of one principal number `n` and every ordering check they
/// admit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderScan {
    pub lambda: f64,
    pub a: f64,
    pub n: u32,
    pub predicted: OrderingSign,
    /// Numerov energy by `n_r`; `None` where no stable orbit exists.
    pub levels: Vec<Option<f64>>,
    /// `(n_r, R)` for each interior level with both neighbours solved.
    pub ratios: Vec<(u32, Option<f64>)>,
    pub order_checks: usize,
    pub ratio_checks: usize,
    pub mass_checks: usize,
    pub violations: Vec<String>,
}

impl OrderScan {
    pub fn skipped(&self) -> usize {
        self.levels.iter().filter(|e| e.is_none()).count()
    }
}

/// Solves all levels with principal number `n` and checks the sign of the
/// same-`n` ordering, `R > 1`, and the shift against the constant-mass level.
///
/// Levels without a stable orbit are skipped; any other solver failure is an
/// error.
pub fn order_scan(p: &PowerLawCoulomb, n: u32, hbar: f64) -> Result<OrderScan> {
    if n == 0 {
        return Err(Error::InvalidParameter("principal number n must be positive".into()));
    }
    let problem = p.problem();
    let mut violations = Vec::new();
    let mut levels = Vec::with_capacity(n as usize);
    for n_r in 0..n {
        let qn = QuantumNumbers::with_hbar(n_r, n - n_r - 1, hbar)?;
        match solve_state(&problem, &qn) {
            Ok(res) => {
                if res.node_count() != n_r {
                    violations.push(format!("({n_r},{}): {} nodes", qn.l, res.node_count()));
                }
                levels.push(Some(res.energy));
            }
            Err(Error::NoStableOrbit(_) | Error::UnstableOrbit { .. }) => levels.push(None),
            Err(e) => return Err(e),
        }
    }

    let predicted = OrderingSign::predicted(p.lambda, p.a);
    let same = |d: f64| d.abs() < DEGENERATE_ENERGY_TOL;
    let mut scan = OrderScan {
        lambda: p.lambda,
        a: p.a,
        n,
        predicted,
        levels,
        ratios: Vec::new(),
        order_checks: 0,
        ratio_checks: 0,
        mass_checks: 0,
        violations,
    };

    for (n_r, e) in scan.levels.iter().enumerate() {
        let Some(e) = *e else { continue };
        let e_c = p.balmer(&QuantumNumbers::with_hbar(n_r as u32, n - n_r as u32 - 1, hbar)?);
        scan.mass_checks += 1;
        let ok = match predicted {
            OrderingSign::Normal => e >= e_c,
            OrderingSign::Inverted => e <= e_c,
            OrderingSign::Degenerate => same(e - e_c),
        };
        if !ok {
            scan.violations.push(format!(
                "mass shift ({n_r},{}): {e} vs constant mass {e_c}",
                n - n_r as u32 - 1
            ));
        }
    }

    for n_r in 1..n as usize {
        if let (Some(upper_l), Some(this)) = (scan.levels[n_r - 1], scan.levels[n_r]) {
            scan.order_checks += 1;
            let diff = this - upper_l;
            let ok = match predicted {
                OrderingSign::Degenerate => same(diff),
                sign => OrderingSign::from_difference(diff) == sign,
            };
            if !ok {
                scan.violations.push(format!(
                    "order at n_r = {n_r}: E(n_r, l) - E(n_r - 1, l + 1) = {diff:e}"
                ));
            }
        }
        if n_r + 1 >= n as usize || predicted == OrderingSign::Degenerate {
            continue;
        }
        if let (Some(x), Some(y), Some(z)) = (scan.levels[n_r - 1], scan.levels[n_r], scan.levels[n_r + 1]) {
            scan.ratio_checks += 1;
            let r = ratio(&[x, y, z]);
            if !r.is_some_and(|r| r > 1.0) {
                scan.violations.push(format!("spacing ratio at n_r = {n_r}: {r:?}"));
            }
            scan.ratios.push((n_r as u32, r));
        }
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table(lambda: f64) -> PowerLawCoulomb {
        PowerLawCoulomb::new(0.5, 0.1, lambda, 10.0).unwrap()
    }

    #[test]
    fn constant_mass_has_no_first_correction() {
        let p = PowerLawCoulomb::new(0.5, 0.1, 0.0, 10.0).unwrap();
        let (e0, e1) = closed_e0_e1(&p, &QuantumNumbers::new(1, 1)).unwrap();
        assert_relative_eq!(e0, -25.0 / 9.0, max_relative = 1e-12);
        assert!(e1.abs() < 1e-12);
    }

    #[test]
    fn table_first_order_sums() {
        let qn = QuantumNumbers::new(0, 2);
        let (e0, e1) = closed_e0_e1(&table(2.0), &qn).unwrap();
        assert!(((e0 + e1).abs() - 1.94444).abs() < 5e-6);
        let (e0, e1) = closed_e0_e1(&table(-2.0), &qn).unwrap();
        assert!(((e0 + e1).abs() - 3.50153).abs() < 5e-6);
    }

    #[test]
    fn closed_forms_match_the_recursion() {
        for lambda in [-3.5, -1.0, 0.5, 2.0, 3.0] {
            for a in [0.01, 0.2] {
                let p = PowerLawCoulomb::new(0.5, a, lambda, 10.0).unwrap();
                for (n_r, l) in [(0, 2), (1, 1), (2, 0)] {
                    let qn = QuantumNumbers::new(n_r, l);
                    let Ok(geo) = p.geometry(&qn) else { continue };
                    let (e0, e1) = closed_e0_e1(&p, &qn).unwrap();
                    let table = p.problem().expand(&qn, 2).unwrap().table;
                    let e = table.energies();
                    assert_relative_eq!(e0, e[0], max_relative = 1e-10);
                    assert!((e1 - e[1]).abs() <= 1e-10 * e[1].abs().max(1e-6 * e[0].abs()));
                    assert!(geo.orbit_identity_residual(&p).abs() < 1e-10);
                    assert_relative_eq!(first_order_sum(&p, &qn).unwrap(), e0 + e1, max_relative = 1e-10);
                }
            }
        }
    }

    #[test]
    fn factored_frequency_shift() {
        for lambda in [-4.0, -2.5, 1.0, 3.5] {
            let p = PowerLawCoulomb::new(0.5, 0.05, lambda, 10.0).unwrap();
            let (direct, factored) = frequency_shift(&p, &QuantumNumbers::new(1, 2)).unwrap();
            assert!((direct - factored).abs() < 1e-10 * direct.abs().max(1e-3));
            assert_eq!(direct.signum(), -lambda.signum());
        }
    }

    #[test]
    fn e2_same_n_differences_match_the_table() {
        for lambda in [-3.0, -1.5, 1.0, 2.0, 3.0] {
            for a in [0.05, 0.1] {
                let p = PowerLawCoulomb::new(0.5, a, lambda, 10.0).unwrap();
                let pr = p.problem();
                let e2 = |n_r, l| pr.expand(&QuantumNumbers::new(n_r, l), 2).unwrap().table.energies()[2];
                let closed = e2_nr_part(&p, &QuantumNumbers::new(1, 1)).unwrap()
                    - e2_nr_part(&p, &QuantumNumbers::new(0, 2)).unwrap();
                let table = e2(1, 1) - e2(0, 2);
                assert_relative_eq!(closed, table, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn order_scan_at_constant_mass_is_degenerate() {
        let p = PowerLawCoulomb::new(0.5, 0.1, 0.0, 10.0).unwrap();
        let scan = order_scan(&p, 3, 1.0).unwrap();
        assert_eq!(scan.predicted, OrderingSign::Degenerate);
        assert!(scan.violations.is_empty(), "{:?}", scan.violations);
        assert_eq!((scan.order_checks, scan.ratio_checks, scan.mass_checks), (2, 0, 3));
    }

    #[test]
    fn order_scan_counts_checks() {
        let scan = order_scan(&table(-2.0), 4, 1.0).unwrap();
        assert!(scan.violations.is_empty(), "{:?}", scan.violations);
        assert_eq!((scan.order_checks, scan.ratio_checks, scan.mass_checks), (3, 2, 4));
        assert!(scan.ratios.iter().all(|(_, r)| r.unwrap() > 1.0));
    }

    #[test]
    fn e2_part_vanishes_without_radial_nodes() {
        assert_eq!(e2_nr_part(&table(2.0), &QuantumNumbers::new(0, 3)).unwrap(), 0.0);
    }

    #[test]
    fn ordering_follows_lambda() {
        assert_eq!(
            level_order(&table(3.0), &QuantumNumbers::new(1, 1)).unwrap(),
            OrderingSign::Normal
        );
        assert_eq!(
            level_order(&table(-3.0), &QuantumNumbers::new(1, 1)).unwrap(),
            OrderingSign::Inverted
        );
        assert_eq!(
            level_order(&table(0.0), &QuantumNumbers::new(1, 1)).unwrap(),
            OrderingSign::Degenerate
        );
        assert!(level_order(&table(1.0), &QuantumNumbers::new(0, 1)).is_err());
    }

    #[test]
    fn closed_and_series_ratios_agree() {
        for lambda in [-2.0, 1.0, 2.0] {
            let rep = spacing_ratio(&table(lambda), 4, 1, 1.0).unwrap();
            let (rc, rs) = (rep.r_closed.unwrap(), rep.r_series.unwrap());
            assert_relative_eq!(rc, rs, max_relative = 1e-7);
            assert!(rc > 1.0);
        }
    }

    #[test]
    fn constant_mass_spacing_is_degenerate() {
        let rep = spacing_ratio(&PowerLawCoulomb::new(0.5, 0.0, 2.0, 10.0).unwrap(), 3, 1, 1.0).unwrap();
        assert!(rep.degenerate);
        assert_eq!(rep.ordering, OrderingSign::Degenerate);
    }

    #[test]
    fn small_a_limit_of_b_ratio() {
        let p = PowerLawCoulomb::new(0.5, 1e-4, 2.0, 10.0).unwrap();
        for n in 3..=5 {
            let rep = spacing_ratio(&p, n, 1, 1.0).unwrap();
            let limit = 1.0 / (1.0 - 2.0 * f64::from(n));
            assert!((rep.b1 / rep.b2 - limit).abs() < 1e-2, "{} vs {limit}", rep.b1 / rep.b2);
        }
    }

    #[test]
    fn numerov_spacing_ratio_exceeds_one() {
        let (e, r) = numerov_spacing(&table(2.0), 4, 1, 1.0).unwrap();
        assert!(r.unwrap() > 1.0);
        assert!(e[0].energy > e[1].energy && e[1].energy > e[2].energy);
    }

    #[test]
    fn rejects_missing_levels() {
        assert!(spacing_ratio(&table(2.0), 2, 1, 1.0).is_err());
        assert!(spacing_ratio(&table(2.0), 4, 3, 1.0).is_err());
    }
}
