//! Dense univariate polynomials in `τ`, used for refined partition functions.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `Σ_k coeffs[k] τ^k`; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RefinedPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> RefinedPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RefinedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `τ^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> RefinedPoly<U> {
        RefinedPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `τ^{len−1} p(1/τ)` for a coefficient vector padded to `len`.
    pub fn reversed(&self, len: usize) -> Self {
        let mut c: Vec<T> = (0..len).map(|k| self.coeff(k)).collect();
        c.reverse();
        RefinedPoly::new(c)
    }
}

impl<T> RefinedPoly<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    pub fn eval(&self, tau: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * tau.clone() + c.clone())
    }

    /// Value at `τ = 1`.
    pub fn total(&self) -> T {
        self.coeffs.iter().cloned().fold(T::zero(), |a, c| a + c)
    }

    pub fn scale(&self, s: &T) -> Self {
        RefinedPoly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RefinedPoly::new(vec![]);
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        RefinedPoly::new(out)
    }

    /// `(1 + τ)^e`.
    pub fn one_plus_tau_pow(e: usize) -> Self {
        let base = RefinedPoly::new(vec![T::one(), T::one()]);
        (0..e).fold(RefinedPoly::new(vec![T::one()]), |acc, _| acc.mul(&base))
    }
}

impl<T: fmt::Display + Zero> fmt::Display for RefinedPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}τ")?,
                _ => write!(f, "{c}τ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
