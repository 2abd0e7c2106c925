//! Truncated Laurent series `x^offset (c_0 + c_1 x + ... )`.
//!
//! The series is known exactly for powers `offset ..= top()`; every operation
//! tracks how far its result stays valid.

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    offset: i32,
    coeffs: Vec<f64>,
}

impl Laurent {
    pub fn new(offset: i32, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { offset, coeffs }
    }

    pub fn from_series(s: &TruncatedSeries, offset: i32) -> Self {
        Self::new(offset, s.coeffs().to_vec())
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    /// Highest power whose coefficient is known.
    pub fn top(&self) -> i32 {
        self.offset + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `x^power`; zero below the offset, `None` past `top()`.
    pub fn at(&self, power: i32) -> Option<f64> {
        if power > self.top() {
            None
        } else if power < self.offset {
            Some(0.0)
        } else {
            Some(self.coeffs[(power - self.offset) as usize])
        }
    }

    pub fn require(&self, power: i32) -> Result<f64> {
        self.at(power).ok_or(Error::InsufficientOrder {
            needed: (power - self.offset).max(0) as usize,
            got: self.coeffs.len() - 1,
        })
    }

    pub fn scale(&self, f: f64) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|c| c * f).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (0..=i).map(|j| self.coeffs[j] * other.coeffs[i - j]).sum())
            .collect();
        Self::new(self.offset + other.offset, coeffs)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let lo = self.offset.min(other.offset);
        let hi = self.top().min(other.top());
        let coeffs = (lo..=hi)
            .map(|p| self.at(p).unwrap() + sign * other.at(p).unwrap())
            .collect();
        Self::new(lo, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.offset + i as i32) as f64 * c)
            .collect();
        Self::new(self.offset - 1, coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::new(self.offset + k, self.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity_tracking() {
        let a = Laurent::new(-3, vec![1.0, 2.0, 3.0, 4.0]);
        let b = Laurent::new(0, vec![1.0, 1.0]);
        assert_eq!(a.top(), 0);
        let s = a.add(&b);
        assert_eq!((s.offset(), s.top()), (-3, 0));
        assert_eq!(s.at(0), Some(5.0));
        let p = a.mul(&b);
        assert_eq!((p.offset(), p.top()), (-3, -2));
        assert_eq!(p.at(-2), Some(3.0));
        assert_eq!(p.at(-1), None);
    }

    #[test]
    fn derivative_of_laurent_monomials() {
        // d/dx (x^-2 + 3 x^-1 + 5) = -2 x^-3 - 3 x^-2 + 0 x^-1
        let d = Laurent::new(-2, vec![1.0, 3.0, 5.0]).derivative();
        assert_eq!(d.offset(), -3);
        assert_eq!(d.at(-3), Some(-2.0));
        assert_eq!(d.at(-2), Some(-3.0));
        assert_eq!(d.at(-1), Some(0.0));
    }
}
