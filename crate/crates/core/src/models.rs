//! Radial mass and potential profiles, kinetic-operator ordering parameters,
//! and the Taylor data the expansion is built from.
//!
//! All Taylor expansions are taken in the scaled deviation `x = (r - r0) / r0`,
//! so the `i`-th coefficient of `f` about `r0` is `r0^i f^(i)(r0) / i!`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// A smooth radial function with Taylor data about any interior point.
///
/// Implementors must provide pointwise values and Taylor coefficients. The
/// derivative methods fall back to Richardson-extrapolated central differences
/// with step `r * 1e-4`.
pub trait RadialProfile: fmt::Debug + Send + Sync {
    fn value(&self, r: f64) -> f64;

    fn derivative(&self, r: f64) -> f64 {
        let h = r * 1e-4;
        let d = |h: f64| (self.value(r + h) - self.value(r - h)) / (2.0 * h);
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    fn second_derivative(&self, r: f64) -> f64 {
        let h = r * 1e-4;
        let f0 = self.value(r);
        let d = |h: f64| (self.value(r + h) - 2.0 * f0 + self.value(r - h)) / (h * h);
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    /// Coefficients `r0^i f^(i)(r0) / i!` for `i = 0..=order`.
    fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries>;
}

/// Taylor coefficients of any radial model about `r0`.
pub fn taylor_coeffs(model: &dyn RadialProfile, r0: f64, order: usize) -> Result<TruncatedSeries> {
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::Domain(format!("expansion point r0 = {r0} must be positive")));
    }
    model.taylor(r0, order)
}

fn check_positive_radius(r0: f64) -> Result<()> {
    if r0 > 0.0 && r0.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("expansion point r0 = {r0} must be positive")))
    }
}

/// Position-dependent mass `m(r)`.
#[derive(Debug, Clone)]
pub enum MassModel {
    /// `m(r) = m_c / (1 + a r)^lambda`.
    PowerLaw {
        m_c: f64,
        a: f64,
        lambda: f64,
    },
    Custom(Arc<dyn RadialProfile>),
}

impl MassModel {
    pub fn power_law(m_c: f64, a: f64, lambda: f64) -> Result<Self> {
        if !(m_c > 0.0) || !m_c.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "reference mass m_c = {m_c} must be positive"
            )));
        }
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass scale a = {a} must be non-negative"
            )));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass exponent {lambda} must be finite"
            )));
        }
        Ok(Self::PowerLaw { m_c, a, lambda })
    }

    pub fn constant(m_c: f64) -> Result<Self> {
        Self::power_law(m_c, 0.0, 0.0)
    }

    /// Wraps a user profile after checking `m(r) > 0` on a logarithmic sample of `[1e-4, 1e4]`.
    pub fn custom(profile: Arc<dyn RadialProfile>) -> Result<Self> {
        for k in 0..=160 {
            let r = 10f64.powf(-4.0 + 8.0 * k as f64 / 160.0);
            let m = profile.value(r);
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "custom mass m({r:e}) = {m} is not positive"
                )));
            }
        }
        Ok(Self::Custom(profile))
    }

    /// `Q(r) = m'(r) / m(r)`.
    pub fn log_derivative(&self, r: f64) -> f64 {
        self.derivative(r) / self.value(r)
    }

    /// `P(r) = (m''(r) + 2 m'(r) / r) / m(r)`.
    pub fn p_term(&self, r: f64) -> f64 {
        (self.second_derivative(r) + 2.0 * self.derivative(r) / r) / self.value(r)
    }

    /// The power-law parameters, if this is the power-law family.
    pub fn power_law_params(&self) -> Option<(f64, f64, f64)> {
        match *self {
            Self::PowerLaw { m_c, a, lambda } => Some((m_c, a, lambda)),
            Self::Custom(_) => None,
        }
    }
}

impl RadialProfile for MassModel {
    fn value(&self, r: f64) -> f64 {
        match self {
            Self::PowerLaw { m_c, a, lambda } => m_c * (1.0 + a * r).powf(-lambda),
            Self::Custom(p) => p.value(r),
        }
    }

    fn derivative(&self, r: f64) -> f64 {
        match self {
            Self::PowerLaw { a, lambda, .. } => -lambda * a * self.value(r) / (1.0 + a * r),
            Self::Custom(p) => p.derivative(r),
        }
    }

    fn second_derivative(&self, r: f64) -> f64 {
        match self {
            Self::PowerLaw { a, lambda, .. } => {
                let t = 1.0 + a * r;
                lambda * (lambda + 1.0) * a * a * self.value(r) / (t * t)
            }
            Self::Custom(p) => p.second_derivative(r),
        }
    }

    fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
        check_positive_radius(r0)?;
        match self {
            Self::PowerLaw { m_c, a, lambda } => {
                // m_c t^-lambda (1 + u x)^-lambda with t = 1 + a r0, u = a r0 / t
                let t = 1.0 + a * r0;
                let u = a * r0 / t;
                let head = m_c * t.powf(-lambda);
                let b = TruncatedSeries::binomial(-lambda, order);
                TruncatedSeries::from_fn(order, |i| head * b.coeff(i) * u.powi(i as i32))
            }
            Self::Custom(p) => p.taylor(r0, order),
        }
    }
}

/// Interaction potential `V(r)`.
#[derive(Debug, Clone)]
pub enum PotentialModel {
    /// `V(r) = -q / r` with `q > 0`.
    Coulomb {
        q: f64,
    },
    Custom(Arc<dyn RadialProfile>),
}

impl PotentialModel {
    pub fn coulomb(q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Coulomb coupling q = {q} must be positive"
            )));
        }
        Ok(Self::Coulomb { q })
    }

    pub fn custom(profile: Arc<dyn RadialProfile>) -> Self {
        Self::Custom(profile)
    }

    pub fn coulomb_strength(&self) -> Option<f64> {
        match *self {
            Self::Coulomb { q } => Some(q),
            Self::Custom(_) => None,
        }
    }
}

impl RadialProfile for PotentialModel {
    fn value(&self, r: f64) -> f64 {
        match self {
            Self::Coulomb { q } => -q / r,
            Self::Custom(p) => p.value(r),
        }
    }

    fn derivative(&self, r: f64) -> f64 {
        match self {
            Self::Coulomb { q } => q / (r * r),
            Self::Custom(p) => p.derivative(r),
        }
    }

    fn second_derivative(&self, r: f64) -> f64 {
        match self {
            Self::Coulomb { q } => -2.0 * q / (r * r * r),
            Self::Custom(p) => p.second_derivative(r),
        }
    }

    fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
        check_positive_radius(r0)?;
        match self {
            Self::Coulomb { q } => {
                let head = -q / r0;
                TruncatedSeries::from_fn(order, |i| if i % 2 == 0 { head } else { -head })
            }
            Self::Custom(p) => p.taylor(r0, order),
        }
    }
}

/// Ordering parameters of the kinetic operator, `alpha + beta + gamma = -1`.
///
/// Only `alpha` and `gamma` are stored; `beta` follows from the constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbiguitySet {
    alpha: f64,
    gamma: f64,
}

impl Default for AmbiguitySet {
    /// `alpha = gamma = 0, beta = -1`.
    fn default() -> Self {
        Self { alpha: 0.0, gamma: 0.0 }
    }
}

impl AmbiguitySet {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let sum = alpha + beta + gamma;
        if (sum + 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "ambiguity parameters must satisfy alpha + beta + gamma = -1, got {sum}"
            )));
        }
        Self::from_alpha_gamma(alpha, gamma)
    }

    pub fn from_alpha_gamma(alpha: f64, gamma: f64) -> Result<Self> {
        if !alpha.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidParameter("ambiguity parameters must be finite".into()));
        }
        Ok(Self { alpha, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        -1.0 - self.alpha - self.gamma
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Weight of `Q^2` in the correction term: `3/4 + alpha gamma + alpha + gamma`.
    pub fn q_squared_weight(&self) -> f64 {
        0.75 + self.alpha * self.gamma + self.alpha + self.gamma
    }

    /// Weight of `P` in the correction term: `(1 + alpha + gamma) / 2`.
    pub fn p_weight(&self) -> f64 {
        0.5 * (1.0 + self.alpha + self.gamma)
    }

    /// Pointwise `F(r) = w_Q Q^2 - w_P P`.
    ///
    /// The `Q / r` pieces coming from the first-derivative term of the radial
    /// equation and from `m''/m = P - 2Q/r` cancel once `psi = chi sqrt(m)` is
    /// substituted, so no `Q / r` term survives.
    pub fn correction_term(&self, mass: &MassModel, r: f64) -> f64 {
        let q = mass.log_derivative(r);
        self.q_squared_weight() * q * q - self.p_weight() * mass.p_term(r)
    }
}

/// Taylor series of `Q = m'/m`, `P = (m'' + 2m'/r)/m` and the correction term
/// `F = w_Q Q^2 - w_P P`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassTerms {
    pub q: TruncatedSeries,
    pub p: TruncatedSeries,
    pub f: TruncatedSeries,
}

/// Expands `Q`, `P` and `F` about `r0` to `order`, given the mass series `m`
/// (which must reach at least `order + 2`).
pub fn qpf_series(m: &TruncatedSeries, amb: &AmbiguitySet, r0: f64, order: usize) -> Result<MassTerms> {
    check_positive_radius(r0)?;
    if m.order() < order + 2 {
        return Err(Error::InsufficientOrder {
            needed: order + 2,
            got: m.order(),
        });
    }
    if !(m.coeff(0) > 0.0) {
        return Err(Error::Domain(format!(
            "mass series has non-positive m_0 = {}",
            m.coeff(0)
        )));
    }
    let dm = m.derivative()?;
    let d1 = dm.truncate(order)?.scale(1.0 / r0);
    let d2 = dm.derivative()?.truncate(order)?.scale(1.0 / (r0 * r0));
    let inv_m = m.truncate(order)?.recip()?;
    let inv_r = TruncatedSeries::binomial(-1.0, order).scale(1.0 / r0);

    let q = d1.mul(&inv_m)?;
    let p = d2.add(&d1.mul(&inv_r)?.scale(2.0))?.mul(&inv_m)?;
    let f = q.mul(&q)?.scale(amb.q_squared_weight()).sub(&p.scale(amb.p_weight()))?;
    Ok(MassTerms { q, p, f })
}

/// Ready-made analytic profiles beyond the power-law mass and Coulomb potential.
pub mod profiles {
    use super::*;

    fn exp_series(z: f64, order: usize) -> Result<TruncatedSeries> {
        // exp(z x) = sum z^i x^i / i!
        let mut c = 1.0;
        TruncatedSeries::from_fn(order, |i| {
            if i > 0 {
                c *= z / i as f64;
            }
            c
        })
    }

    /// `m(r) = m_c (1 + b e^{-k r})`, positive for `b > -1`.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct ExpDressedMass {
        pub m_c: f64,
        pub amplitude: f64,
        pub rate: f64,
    }

    impl RadialProfile for ExpDressedMass {
        fn value(&self, r: f64) -> f64 {
            self.m_c * (1.0 + self.amplitude * (-self.rate * r).exp())
        }

        fn derivative(&self, r: f64) -> f64 {
            -self.m_c * self.amplitude * self.rate * (-self.rate * r).exp()
        }

        fn second_derivative(&self, r: f64) -> f64 {
            self.m_c * self.amplitude * self.rate * self.rate * (-self.rate * r).exp()
        }

        fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
            check_positive_radius(r0)?;
            let tail = exp_series(-self.rate * r0, order)?.scale(self.m_c * self.amplitude * (-self.rate * r0).exp());
            tail.add(&TruncatedSeries::constant(self.m_c, order)?)
        }
    }

    /// Screened Coulomb `V(r) = -q e^{-mu r} / r`.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct Yukawa {
        pub q: f64,
        pub mu: f64,
    }

    impl RadialProfile for Yukawa {
        fn value(&self, r: f64) -> f64 {
            -self.q * (-self.mu * r).exp() / r
        }

        fn derivative(&self, r: f64) -> f64 {
            self.q * (-self.mu * r).exp() * (1.0 + self.mu * r) / (r * r)
        }

        fn second_derivative(&self, r: f64) -> f64 {
            let mr = self.mu * r;
            -self.q * (-mr).exp() * (2.0 + 2.0 * mr + mr * mr) / (r * r * r)
        }

        fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
            check_positive_radius(r0)?;
            let inv = TruncatedSeries::binomial(-1.0, order);
            let screen = exp_series(-self.mu * r0, order)?;
            Ok(inv.mul(&screen)?.scale(-self.q * (-self.mu * r0).exp() / r0))
        }
    }

    /// Coulomb plus linear confinement `V(r) = -q / r + sigma r`.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct CoulombPlusLinear {
        pub q: f64,
        pub sigma: f64,
    }

    impl RadialProfile for CoulombPlusLinear {
        fn value(&self, r: f64) -> f64 {
            -self.q / r + self.sigma * r
        }

        fn derivative(&self, r: f64) -> f64 {
            self.q / (r * r) + self.sigma
        }

        fn second_derivative(&self, r: f64) -> f64 {
            -2.0 * self.q / (r * r * r)
        }

        fn taylor(&self, r0: f64, order: usize) -> Result<TruncatedSeries> {
            check_positive_radius(r0)?;
            let head = -self.q / r0;
            TruncatedSeries::from_fn(order, |i| {
                let coulomb = if i % 2 == 0 { head } else { -head };
                match i {
                    0 | 1 => coulomb + self.sigma * r0,
                    _ => coulomb,
                }
            })
        }
    }
}
