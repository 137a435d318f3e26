//! Truncated bivariate power series with exact rational coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of `x^i y^j` for `i < nx`, `j < ny`; everything beyond is dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigSeries2D {
    nx: usize,
    ny: usize,
    c: Vec<BigRational>,
}

impl BigSeries2D {
    pub fn zero(nx: usize, ny: usize) -> Self {
        BigSeries2D { nx, ny, c: vec![BigRational::zero(); nx * ny] }
    }

    pub fn constant(nx: usize, ny: usize, v: BigRational) -> Self {
        let mut s = Self::zero(nx, ny);
        if nx > 0 && ny > 0 {
            s.c[0] = v;
        }
        s
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::constant(nx, ny, BigRational::one())
    }

    /// `coef · x^i y^j`.
    pub fn monomial(nx: usize, ny: usize, i: usize, j: usize, coef: BigRational) -> Self {
        let mut s = Self::zero(nx, ny);
        if i < nx && j < ny {
            s.c[i * ny + j] = coef;
        }
        s
    }

    pub fn x(nx: usize, ny: usize) -> Self {
        Self::monomial(nx, ny, 1, 0, BigRational::one())
    }

    pub fn y(nx: usize, ny: usize) -> Self {
        Self::monomial(nx, ny, 0, 1, BigRational::one())
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        if i < self.nx && j < self.ny {
            self.c[i * self.ny + j].clone()
        } else {
            BigRational::zero()
        }
    }

    /// The coefficient as an integer, if it is one.
    pub fn int_coeff(&self, i: usize, j: usize) -> Option<BigInt> {
        let c = self.coeff(i, j);
        c.is_integer().then(|| c.to_integer())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        BigSeries2D { nx: self.nx, ny: self.ny, c: self.c.iter().map(|v| v * s).collect() }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.nx, self.ny);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse by Newton iteration `g ← g(2 − fg)`; `None` if the constant term is 0.
    pub fn recip(&self) -> Option<Self> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return None;
        }
        let two = Self::constant(self.nx, self.ny, BigRational::from_integer(2.into()));
        let mut g = Self::constant(self.nx, self.ny, c0.recip());
        // each step doubles the correct total degree
        let mut correct = 1;
        while correct < self.nx + self.ny {
            let fg = self * &g;
            g = &g * &(&two - &fg);
            correct *= 2;
        }
        Some(g)
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        assert_eq!((self.nx, self.ny), (o.nx, o.ny), "series orders differ");
        BigSeries2D { nx: self.nx, ny: self.ny, c: self.c.iter().zip(&o.c).map(|(a, b)| f(a, b)).collect() }
    }
}

impl Add for &BigSeries2D {
    type Output = BigSeries2D;
    fn add(self, o: &BigSeries2D) -> BigSeries2D {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub for &BigSeries2D {
    type Output = BigSeries2D;
    fn sub(self, o: &BigSeries2D) -> BigSeries2D {
        self.zip(o, |a, b| a - b)
    }
}

impl Neg for &BigSeries2D {
    type Output = BigSeries2D;
    fn neg(self) -> BigSeries2D {
        BigSeries2D { nx: self.nx, ny: self.ny, c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &BigSeries2D {
    type Output = BigSeries2D;
    fn mul(self, o: &BigSeries2D) -> BigSeries2D {
        assert_eq!((self.nx, self.ny), (o.nx, o.ny), "series orders differ");
        let (nx, ny) = (self.nx, self.ny);
        let mut out = BigSeries2D::zero(nx, ny);
        for i1 in 0..nx {
            for j1 in 0..ny {
                let a = &self.c[i1 * ny + j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..nx - i1 {
                    for j2 in 0..ny - j1 {
                        let b = &o.c[i2 * ny + j2];
                        if !b.is_zero() {
                            out.c[(i1 + i2) * ny + j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn delannoy_like_coefficients() {
        // 1/(1−x−y−xy) has the Delannoy numbers as coefficients
        let (x, y) = (BigSeries2D::x(5, 5), BigSeries2D::y(5, 5));
        let one = BigSeries2D::one(5, 5);
        let f = &(&(&one - &x) - &y) - &(&x * &y);
        let g = f.recip().unwrap();
        let delannoy = [[1, 1, 1, 1, 1], [1, 3, 5, 7, 9], [1, 5, 13, 25, 41], [1, 7, 25, 63, 129], [1, 9, 41, 129, 321]];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(g.coeff(i, j), int(delannoy[i][j]));
            }
        }
    }

    #[test]
    fn reciprocal_round_trip() {
        let (x, y) = (BigSeries2D::x(6, 4), BigSeries2D::y(6, 4));
        let f = &(&BigSeries2D::constant(6, 4, int(3)) + &x.scale(&int(2))) - &(&y * &y);
        let g = f.recip().unwrap();
        assert_eq!(&f * &g, BigSeries2D::one(6, 4));
        assert!(BigSeries2D::zero(3, 3).recip().is_none());
    }
}
