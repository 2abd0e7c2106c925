//! Classical limit: the circular orbit at the bottom of the effective
//! potential, the zeroth-order energy, the oscillation frequency about the
//! orbit and the leading logarithmic-derivative series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{MassModel, PotentialModel, RadialProfile};
use crate::series::TruncatedSeries;

const SCAN_DECADES: f64 = 6.0;
const SCAN_POINTS_PER_DECADE: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalPoint {
    pub r0: f64,
    pub e0: f64,
    pub omega: f64,
    /// `1 + a_1 x + a_2 x^2 + ...`, so that `C_0^2 = omega^2 x^2 shape(x)`.
    pub shape: TruncatedSeries,
    /// Coefficients `C_i^0` of `C_0(x) = x sum C_i^0 x^i`.
    pub c0: TruncatedSeries,
    /// Number of stable roots of the orbit equation found by the scan. More
    /// than one means the smallest was chosen.
    pub stable_roots: usize,
}

impl ClassicalPoint {
    /// Solves the classical problem for centrifugal parameter `big_lambda` and
    /// expands everything to `order`.
    pub fn compute(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, order: usize) -> Result<Self> {
        let orbit = locate_orbit(mass, pot, big_lambda)?;
        let r0 = orbit.r0;
        let m = mass.taylor(r0, order + 2)?;
        let v = pot.taylor(r0, order + 2)?;
        let (omega, shape) = leading_frequency(&m, &v, order)?;
        let c0 = leading_logderiv(omega, &shape, order)?;
        Ok(Self {
            r0,
            e0: zeroth_energy(mass, pot, big_lambda, r0),
            omega,
            shape,
            c0,
            stable_roots: orbit.stable_roots,
        })
    }
}

/// Residual of the orbit equation `m r^3 V' - Lambda^2 (1 + m' r / (2m))`.
pub fn orbit_residual(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, r: f64) -> f64 {
    let m = mass.value(r);
    m * r.powi(3) * pot.derivative(r) - big_lambda * big_lambda * (1.0 + mass.derivative(r) * r / (2.0 * m))
}

fn orbit_residual_scale(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, r: f64) -> f64 {
    let m = mass.value(r);
    let l2 = big_lambda * big_lambda;
    (m * r.powi(3) * pot.derivative(r)).abs() + l2 * (1.0 + (mass.derivative(r) * r / (2.0 * m)).abs())
}

fn orbit_residual_derivative(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, r: f64) -> f64 {
    let m = mass.value(r);
    let dm = mass.derivative(r);
    let d2m = mass.second_derivative(r);
    let dv = pot.derivative(r);
    let d2v = pot.second_derivative(r);
    let lhs = dm * r.powi(3) * dv + 3.0 * m * r * r * dv + m * r.powi(3) * d2v;
    let rhs = 0.5 * big_lambda * big_lambda * ((d2m * r + dm) / m - dm * dm * r / (m * m));
    lhs - rhs
}

/// Curvature of the effective potential at an orbit, in the units of `omega^2`.
fn omega_squared_at(mass: &MassModel, pot: &PotentialModel, r: f64) -> Result<f64> {
    let m = mass.taylor(r, 2)?;
    let v = pot.taylor(r, 2)?;
    let (m0, m1, m2) = (m.coeff(0), m.coeff(1), m.coeff(2));
    let (v1, v2) = (v.coeff(1), v.coeff(2));
    let den = 2.0 * m0 + m1;
    if den == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(2.0 * (m0 * v2 + m1 * v1) + 2.0 * m0 * v1 * (3.0 * m0 - m2) / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbit {
    pub r0: f64,
    pub omega_sq: f64,
    pub stable_roots: usize,
}

/// Radius of the stable circular orbit for centrifugal parameter `big_lambda`.
pub fn find_orbit_radius(mass: &MassModel, pot: &PotentialModel, big_lambda: f64) -> Result<f64> {
    locate_orbit(mass, pot, big_lambda).map(|o| o.r0)
}

/// Scans `r` logarithmically for sign changes of the orbit equation, refines
/// each root and keeps the smallest one where the orbit is stable.
pub fn locate_orbit(mass: &MassModel, pot: &PotentialModel, big_lambda: f64) -> Result<Orbit> {
    if !(big_lambda > 0.0) || !big_lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "centrifugal parameter {big_lambda} must be positive"
        )));
    }
    let f = |r: f64| orbit_residual(mass, pot, big_lambda, r);

    let reference = big_lambda * big_lambda / (mass.value(1.0) * pot.derivative(1.0).abs());
    let r_s = if reference.is_finite() && reference > 0.0 {
        reference
    } else {
        1.0
    };
    let n = (2.0 * SCAN_DECADES) as usize * SCAN_POINTS_PER_DECADE;
    let grid: Vec<f64> = (0..=n)
        .map(|k| r_s * 10f64.powf(-SCAN_DECADES + 2.0 * SCAN_DECADES * k as f64 / n as f64))
        .collect();

    let mut roots = Vec::new();
    let mut prev_r = grid[0];
    let mut prev_f = f(prev_r);
    for &r in &grid[1..] {
        let fr = f(r);
        if !fr.is_finite() {
            prev_r = r;
            prev_f = fr;
            continue;
        }
        if fr == 0.0 {
            roots.push(r);
        } else if prev_f.is_finite() && prev_f != 0.0 && prev_f.signum() != fr.signum() {
            roots.push(refine_root(&f, prev_r, r, prev_f));
        }
        prev_r = r;
        prev_f = fr;
    }

    if roots.is_empty() {
        return Err(Error::NoStableOrbit(format!(
            "orbit equation has no sign change on [{:e}, {:e}] for Lambda = {big_lambda}",
            grid[0], grid[n]
        )));
    }

    let mut stable = Vec::new();
    let mut best_unstable = f64::NEG_INFINITY;
    for r in roots {
        let r = newton_polish(mass, pot, big_lambda, r);
        let w2 = omega_squared_at(mass, pot, r)?;
        if w2 > 0.0 {
            stable.push((r, w2));
        } else {
            best_unstable = best_unstable.max(w2);
        }
    }
    match stable.first() {
        Some(&(r0, omega_sq)) => Ok(Orbit {
            r0,
            omega_sq,
            stable_roots: stable.len(),
        }),
        None => Err(Error::UnstableOrbit {
            omega_sq: best_unstable,
        }),
    }
}

fn refine_root(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= 1e-14 * mid {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn newton_polish(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, r: f64) -> f64 {
    let fr = orbit_residual(mass, pot, big_lambda, r);
    let d = orbit_residual_derivative(mass, pot, big_lambda, r);
    if d == 0.0 || !d.is_finite() {
        return r;
    }
    let next = r - fr / d;
    if next > 0.0 && orbit_residual(mass, pot, big_lambda, next).abs() < fr.abs() {
        next
    } else {
        r
    }
}

/// Relative residual of the orbit equation at `r`.
pub fn orbit_relative_residual(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, r: f64) -> f64 {
    orbit_residual(mass, pot, big_lambda, r).abs() / orbit_residual_scale(mass, pot, big_lambda, r)
}

/// `E_0 = V(r0) + Lambda^2 / (2 m(r0) r0^2)`.
pub fn zeroth_energy(mass: &MassModel, pot: &PotentialModel, big_lambda: f64, r0: f64) -> f64 {
    pot.value(r0) + big_lambda * big_lambda / (2.0 * mass.value(r0) * r0 * r0)
}

/// Frequency `omega` and shape coefficients `a_1..a_N` from the Taylor data
/// `m_i`, `V_i` (both of order at least `N + 2`).
///
/// The returned shape series has order `N` and unit constant term.
pub fn leading_frequency(m: &TruncatedSeries, v: &TruncatedSeries, order: usize) -> Result<(f64, TruncatedSeries)> {
    let needed = order + 2;
    for s in [m, v] {
        if s.order() < needed {
            return Err(Error::InsufficientOrder { needed, got: s.order() });
        }
    }
    let (m0, m1, m2) = (m.coeff(0), m.coeff(1), m.coeff(2));
    let (v1, v2) = (v.coeff(1), v.coeff(2));
    let den = 2.0 * m0 + m1;
    if den == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    let omega_sq = 2.0 * (m0 * v2 + m1 * v1) + 2.0 * m0 * v1 * (3.0 * m0 - m2) / den;
    if !(omega_sq > 0.0) {
        return Err(Error::UnstableOrbit { omega_sq });
    }
    let centrifugal = m0 * m0 * v1 / den;
    let shape = TruncatedSeries::from_fn(order, |i| {
        if i == 0 {
            return 1.0;
        }
        let direct: f64 = (0..=i + 1).map(|j| m.coeff(j) * v.coeff(i + 2 - j)).sum();
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let bend = centrifugal * ((i as f64 + 3.0) * sign - m.coeff(i + 2) / m0);
        2.0 * (direct + bend) / omega_sq
    })?;
    Ok((omega_sq.sqrt(), shape))
}

/// Coefficients `C_i^0` from `C_0^0 = -omega` and the quadratic recursion.
///
/// `shape` carries `1, a_1, a_2, ...`; the result has the same order.
pub fn leading_logderiv(omega: f64, shape: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("frequency {omega} must be positive")));
    }
    if shape.order() < order {
        return Err(Error::InsufficientOrder {
            needed: order,
            got: shape.order(),
        });
    }
    let mut c = Vec::with_capacity(order + 1);
    c.push(-omega);
    for i in 1..=order {
        let cross: f64 = (1..i).map(|j| c[j] * c[i - j]).sum();
        c.push((cross - omega * omega * shape.coeff(i)) / (2.0 * omega));
    }
    TruncatedSeries::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::profiles::Yukawa;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn coulomb() -> PotentialModel {
        PotentialModel::coulomb(10.0).unwrap()
    }

    // Independent bisection on the orbit equation written out for the power-law
    // Coulomb family: m_c q r / t^lambda = Lambda^2 (1 - lambda a r / (2 t)).
    fn bisect_power_law(lambda: f64, a: f64, big_lambda: f64, mut lo: f64, mut hi: f64) -> f64 {
        let g = |r: f64| {
            let t = 1.0 + a * r;
            0.5 * 10.0 * r / t.powf(lambda) - big_lambda * big_lambda * (1.0 - lambda * a * r / (2.0 * t))
        };
        let glo = g(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid).signum() == glo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn constant_mass_orbit() {
        let m = MassModel::constant(0.5).unwrap();
        let r0 = find_orbit_radius(&m, &coulomb(), 3.0).unwrap();
        assert_relative_eq!(r0, 1.8, max_relative = 1e-13);
        let e0 = zeroth_energy(&m, &coulomb(), 3.0, r0);
        assert_relative_eq!(e0, -0.5 * 100.0 / (2.0 * 9.0), max_relative = 1e-13);
    }

    #[test]
    fn power_law_orbits_match_independent_bisection() {
        let m = MassModel::power_law(0.5, 0.1, 2.0).unwrap();
        let r0 = find_orbit_radius(&m, &coulomb(), 3.0).unwrap();
        assert_relative_eq!(r0, 1.8 / 0.82, max_relative = 1e-12);
        assert_relative_eq!(r0, bisect_power_law(2.0, 0.1, 3.0, 0.5, 5.0), max_relative = 1e-12);
        assert_relative_eq!(r0, 2.195122, epsilon = 5e-7);
        assert_relative_eq!(zeroth_energy(&m, &coulomb(), 3.0, r0), -1.77778, epsilon = 5e-6);

        let m = MassModel::power_law(0.5, 0.1, 3.0).unwrap();
        let r0 = find_orbit_radius(&m, &coulomb(), 3.0).unwrap();
        assert_relative_eq!(r0, bisect_power_law(3.0, 0.1, 3.0, 0.5, 6.0), max_relative = 1e-12);
        assert_relative_eq!(zeroth_energy(&m, &coulomb(), 3.0, r0).abs(), 1.18817, epsilon = 5e-6);

        let m = MassModel::power_law(0.5, 0.1, -3.0).unwrap();
        let r0 = find_orbit_radius(&m, &coulomb(), 3.0).unwrap();
        assert_relative_eq!(zeroth_energy(&m, &coulomb(), 3.0, r0).abs(), 4.04566, epsilon = 5e-6);
    }

    #[test]
    fn orbit_residual_is_tiny() {
        for lambda in [-4.0, -1.5, 0.5, 2.0, 3.5] {
            for a in [0.01, 0.2] {
                let m = MassModel::power_law(0.5, a, lambda).unwrap();
                for big_lambda in [1.0, 3.0, 5.0] {
                    match find_orbit_radius(&m, &coulomb(), big_lambda) {
                        Ok(r0) => assert!(orbit_relative_residual(&m, &coulomb(), big_lambda, r0) < 1e-12),
                        // for lambda >= 2 the orbit disappears once Lambda^2 is large
                        // compared with m_c q / a
                        Err(e) => assert!(lambda >= 2.0 && matches!(e, Error::NoStableOrbit(_)), "{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn strongly_screened_potential_has_no_orbit() {
        let m = MassModel::constant(0.5).unwrap();
        let pot = PotentialModel::custom(Arc::new(Yukawa { q: 1.0, mu: 2.0 }));
        assert!(matches!(find_orbit_radius(&m, &pot, 5.0), Err(Error::NoStableOrbit(_))));
    }

    #[test]
    fn screened_potential_keeps_the_inner_stable_root() {
        // Weak screening: an inner minimum and an outer maximum of the effective potential.
        let m = MassModel::constant(0.5).unwrap();
        let pot = PotentialModel::custom(Arc::new(Yukawa { q: 10.0, mu: 0.1 }));
        let orbit = locate_orbit(&m, &pot, 3.0).unwrap();
        assert_eq!(orbit.stable_roots, 1);
        assert!(orbit.omega_sq > 0.0);
        assert!(orbit.r0 < 5.0);
    }

    #[test]
    fn repulsive_potential_is_rejected() {
        #[derive(Debug)]
        struct Repulsive;
        impl RadialProfile for Repulsive {
            fn value(&self, r: f64) -> f64 {
                1.0 / r
            }
            fn derivative(&self, r: f64) -> f64 {
                -1.0 / (r * r)
            }
            fn second_derivative(&self, r: f64) -> f64 {
                2.0 / (r * r * r)
            }
            fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
                TruncatedSeries::from_fn(order, |i| if i % 2 == 0 { 1.0 / r0 } else { -1.0 / r0 })
            }
        }
        let m = MassModel::constant(0.5).unwrap();
        let pot = PotentialModel::custom(Arc::new(Repulsive));
        assert!(matches!(find_orbit_radius(&m, &pot, 2.0), Err(Error::NoStableOrbit(_))));
    }

    #[test]
    fn unstable_only_orbit() {
        // V = -q / r^3 with constant mass: m r^3 V' = 3 m q / r = Lambda^2 has one
        // root, a maximum of the effective potential.
        #[derive(Debug)]
        struct Cubic;
        impl RadialProfile for Cubic {
            fn value(&self, r: f64) -> f64 {
                -1.0 / r.powi(3)
            }
            fn derivative(&self, r: f64) -> f64 {
                3.0 / r.powi(4)
            }
            fn second_derivative(&self, r: f64) -> f64 {
                -12.0 / r.powi(5)
            }
            fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
                Ok(TruncatedSeries::binomial(-3.0, order).scale(-1.0 / r0.powi(3)))
            }
        }
        let m = MassModel::constant(0.5).unwrap();
        let pot = PotentialModel::custom(Arc::new(Cubic));
        assert!(matches!(
            find_orbit_radius(&m, &pot, 2.0),
            Err(Error::UnstableOrbit { .. })
        ));
    }

    #[test]
    fn constant_mass_frequency() {
        let m = MassModel::constant(0.5).unwrap();
        let r0 = 1.8;
        let (omega, _) = leading_frequency(&m.taylor(r0, 4).unwrap(), &coulomb().taylor(r0, 4).unwrap(), 2).unwrap();
        assert_relative_eq!(omega, (0.5 * 10.0 / r0).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(omega * r0, 3.0, max_relative = 1e-14);
    }

    // Closed-form frequency of the power-law Coulomb family, written out independently.
    fn omega_power_law(m_c: f64, q: f64, a: f64, lambda: f64, r0: f64) -> f64 {
        let u = a * r0;
        let num = m_c
            * q
            * (1.0 + u).powf(-lambda - 1.0)
            * (u * u * (2.0 - lambda) * (1.0 - lambda) + 2.0 * u * (2.0 - lambda) + 2.0);
        (num / (r0 * (2.0 + (2.0 - lambda) * u))).sqrt()
    }

    #[test]
    fn power_law_frequency_agrees_with_closed_form() {
        let m = MassModel::power_law(0.5, 0.1, 2.0).unwrap();
        let r0 = find_orbit_radius(&m, &coulomb(), 3.0).unwrap();
        let (omega, _) = leading_frequency(&m.taylor(r0, 4).unwrap(), &coulomb().taylor(r0, 4).unwrap(), 2).unwrap();
        let t = 1.0 + 0.1 * r0;
        assert_relative_eq!(omega, (0.5 * 10.0 / (r0 * t.powi(3))).sqrt(), max_relative = 1e-13);
        assert_relative_eq!(omega, 1.120667, epsilon = 5e-7);

        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let lambda = rng.gen_range(-4.0..4.0);
            let a = rng.gen_range(0.001..0.3);
            let big_lambda = rng.gen_range(1..=5) as f64;
            let m = MassModel::power_law(0.5, a, lambda).unwrap();
            let r0 = find_orbit_radius(&m, &coulomb(), big_lambda).unwrap();
            let (omega, _) =
                leading_frequency(&m.taylor(r0, 4).unwrap(), &coulomb().taylor(r0, 4).unwrap(), 2).unwrap();
            assert_relative_eq!(omega, omega_power_law(0.5, 10.0, a, lambda, r0), max_relative = 1e-10);
        }
    }

    #[test]
    fn leading_logderiv_examples() {
        let flat = TruncatedSeries::one(4);
        let c = leading_logderiv(1.3, &flat, 4).unwrap();
        assert_eq!(c.coeffs(), &[-1.3, 0.0, 0.0, 0.0, 0.0]);

        let omega = 0.8;
        let shape = TruncatedSeries::new(vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        let c = leading_logderiv(omega, &shape, 3).unwrap();
        assert_relative_eq!(c.coeff(1), -omega / 2.0, max_relative = 1e-15);
        assert_relative_eq!(c.coeff(2), omega / 8.0, max_relative = 1e-15);
    }

    #[test]
    fn classical_point_invariants() {
        for (lambda, big_lambda) in [(3.0, 3.0), (-2.0, 2.0), (0.7, 4.0)] {
            let m = MassModel::power_law(0.5, 0.1, lambda).unwrap();
            let cp = ClassicalPoint::compute(&m, &coulomb(), big_lambda, 12).unwrap();
            assert!(cp.omega > 0.0);
            assert_eq!(cp.c0.coeff(0), -cp.omega);

            // square-root path against the quadratic recursion
            let sqrt_path = cp.shape.sqrt().unwrap().scale(-cp.omega);
            for (a, b) in sqrt_path.coeffs().iter().zip(cp.c0.coeffs()) {
                assert_relative_eq!(*a, *b, epsilon = 1e-12 * cp.omega, max_relative = 1e-12);
            }
            // C_0^2 = omega^2 x^2 shape
            let sq = cp.c0.mul(&cp.c0).unwrap();
            let target = cp.shape.scale(cp.omega * cp.omega);
            for (a, b) in sq.coeffs().iter().zip(target.coeffs()) {
                assert_relative_eq!(*a, *b, epsilon = 1e-11 * cp.omega * cp.omega, max_relative = 1e-11);
            }
            // constant term of the zeroth-order equation: 2 m_0 (V_0 - E_0) + Lambda^2 / r0^2 = 0
            let m0 = m.value(cp.r0);
            let v0 = coulomb().value(cp.r0);
            let balance = 2.0 * m0 * (v0 - cp.e0) + big_lambda * big_lambda / (cp.r0 * cp.r0);
            assert!(balance.abs() < 1e-10 * (big_lambda / cp.r0).powi(2));
        }
    }

    #[test]
    fn degenerate_denominator() {
        let m = TruncatedSeries::new(vec![1.0, -2.0, 0.0, 0.0]).unwrap();
        let v = TruncatedSeries::new(vec![-1.0, 1.0, -1.0, 1.0]).unwrap();
        assert_eq!(leading_frequency(&m, &v, 1).unwrap_err(), Error::DegenerateDenominator);
    }
}
