//! Truncated power series in a single real variable.
//!
//! A [`TruncatedSeries`] of order `N` holds the coefficients `c_0..=c_N` of
//! `c_0 + c_1 x + ... + c_N x^N`. Binary operations require both operands to
//! carry the same order; nothing is ever promoted or truncated implicitly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least one coefficient".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("coefficient {i} is not finite")));
        }
        Ok(Self { coeffs })
    }

    /// Builds a series of the given order from a generator `i -> c_i`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..=order).map(f).collect())
    }

    pub fn constant(value: f64, order: usize) -> Result<Self> {
        Self::from_fn(order, |i| if i == 0 { value } else { 0.0 })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = 1.0;
        s
    }

    /// `(1 + x)^p` by the binomial series.
    pub fn binomial(p: f64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = 1.0;
        for i in 0..=order {
            coeffs.push(c);
            c *= (p - i as f64) / (i as f64 + 1.0);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient `c_i`, or zero past the truncation order.
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Keeps the coefficients up to `order`. Asking for a longer series is an error.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                needed: order,
                got: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|i| (0..=i).map(|j| self.coeffs[j] * other.coeffs[i - j]).sum())
            .collect();
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse; the constant term must be non-zero.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == 0.0 {
            return Err(Error::Domain("reciprocal of a series with zero constant term".into()));
        }
        let n = self.order();
        let mut out = Vec::with_capacity(n + 1);
        out.push(1.0 / c0);
        for i in 1..=n {
            let acc: f64 = (1..=i).map(|j| self.coeffs[j] * out[i - j]).sum();
            out.push(-acc / c0);
        }
        Ok(Self { coeffs: out })
    }

    /// Square root with positive constant term.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if !(c0 > 0.0) {
            return Err(Error::Domain(format!(
                "square root needs a positive constant term, got {c0}"
            )));
        }
        let n = self.order();
        let s0 = c0.sqrt();
        let mut out = Vec::with_capacity(n + 1);
        out.push(s0);
        for i in 1..=n {
            let cross: f64 = (1..i).map(|j| out[j] * out[i - j]).sum();
            out.push((self.coeffs[i] - cross) / (2.0 * s0));
        }
        Ok(Self { coeffs: out })
    }

    /// Term-by-term derivative `d/dx`; the result has order `N - 1`.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { needed: 1, got: 0 });
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| i as f64 * c)
                .collect(),
        })
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{i}")?,
            }
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
