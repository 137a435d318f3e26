//! The 6V-DWBC side: determinant formulas for the counts and the refined counts, and
//! brute-force 6V-DWBC enumeration.

mod series;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::caps::Caps;
use crate::enumerate::Weight;
use crate::error::{Error, Result};
use crate::lattice::BoundaryKind;
use crate::poly::RefinedPoly;

pub use series::BigSeries2D;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `1/(1−xy) + 2x/((1−x)(1−x−y−xy))`, plus `x y^{n−1} (τ−1)/(1−τx) · (1+x)^n/(1−x)^{n+1}` when `tau` is given,
/// truncated to `x^i y^j` with `i, j < n`.
pub fn series_kernel(n: usize, tau: Option<&BigRational>) -> BigSeries2D {
    let one = BigSeries2D::one(n, n);
    let x = BigSeries2D::x(n, n);
    let y = BigSeries2D::y(n, n);
    let xy = &x * &y;
    let one_minus_x = &one - &x;
    let first = (&one - &xy).recip().expect("unit constant term");
    let d = &(&(&one - &x) - &y) - &xy;
    let second = &x.scale(&rat(2)) * &(&one_minus_x * &d).recip().expect("unit constant term");
    let mut k = &first + &second;
    if let Some(t) = tau {
        let geo = (&one - &x.scale(t)).recip().expect("unit constant term");
        let num = (&one + &x).pow(n);
        let den = one_minus_x.pow(n + 1).recip().expect("unit constant term");
        let ypow = y.pow(n - 1);
        let extra = &(&(&(&x * &ypow) * &geo) * &num) * &den;
        k = &k + &extra.scale(&(t - BigRational::one()));
    }
    k
}

/// Integer coefficient matrix `[x^i y^j]` of the kernel, `0 ≤ i, j < n`.
pub fn kernel_matrix(n: usize, tau: Option<&BigRational>) -> Result<Vec<Vec<BigInt>>> {
    let k = series_kernel(n, tau);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    k.int_coeff(i, j).ok_or_else(|| {
                        Error::DomainMismatch(format!("kernel coefficient ({i},{j}) is not an integer"))
                    })
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `Z_n^{6V}` for the 6V model with DWBC at `(a, b, c) = (1, √2, 1)`.
pub fn z6v_det(n: usize, caps: &Caps) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidSize { m: n, reason: "the determinant needs n >= 1" });
    }
    Caps::check("determinant", n, caps.det)?;
    let d = bareiss_det(kernel_matrix(n, None)?);
    d.to_biguint().ok_or_else(|| Error::DomainMismatch("negative determinant".into()))
}

/// `Z_n^{6V₁}((τ+1)/2)` as an exact polynomial in `τ`, by evaluation at `n+2` integer points and
/// interpolation. The interpolant must have integer coefficients and degree below `n`.
pub fn z6v_refined_det(n: usize, caps: &Caps) -> Result<RefinedPoly<BigInt>> {
    if n < 1 {
        return Err(Error::InvalidSize { m: n, reason: "the determinant needs n >= 1" });
    }
    Caps::check("determinant", n, caps.det)?;
    let pts: Vec<i64> = (0..n as i64 + 2).collect();
    let vals: Vec<BigInt> = pts
        .par_iter()
        .map(|&t| kernel_matrix(n, Some(&rat(t))).map(bareiss_det))
        .collect::<Result<_>>()?;
    let coeffs = interpolate(&pts, &vals);
    let mut out = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::DomainMismatch(format!("refined determinant coefficient {k} is not an integer")));
        }
        if k >= n && !c.is_zero() {
            return Err(Error::DomainMismatch(format!("refined determinant has degree {k} >= n")));
        }
        out.push(c.to_integer());
    }
    Ok(RefinedPoly::new(out))
}

/// Monomial coefficients of the interpolating polynomial (Newton divided differences).
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / rat(xs[i] - xs[i - level]);
        }
    }
    // Horner in Newton form
    let mut poly = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (x − xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &poly[k];
            }
            next[k] -= &poly[k] * rat(xs[i]);
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// `2^e`.
fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// `Z_m^{20V₃}` through the determinant: `2^{n(n+1)/2} Z_n^{6V}` for `m = 2n`, `2^{n(n−1)/2} Z_n^{6V}` for `m = 2n−1`.
pub fn counts_from_6v(m: usize, caps: &Caps) -> Result<BigUint> {
    if m < 1 {
        return Err(Error::InvalidSize { m, reason: "the triangle needs m >= 1" });
    }
    let n = m.div_ceil(2);
    let z = z6v_det(n, caps)?;
    let e = if m.is_multiple_of(2) { n * (n + 1) / 2 } else { n * (n - 1) / 2 };
    Ok(z * pow2(e))
}

/// Refined polynomial of the triangle through the refined determinant. DWBC3 is
/// `2^{n(n−1)/2} (τ+1)^n P_n(τ)` for `m = 2n` and `2^{(n−1)(n−2)/2} (τ+1)^{n−1} P_n(τ)` for `m = 2n−1`;
/// DWBC2 and DWBC1 are its reversal.
pub fn refined_from_6v(m: usize, bc: BoundaryKind, caps: &Caps) -> Result<RefinedPoly<BigUint>> {
    if m < 1 {
        return Err(Error::InvalidSize { m, reason: "the triangle needs m >= 1" });
    }
    let n = m.div_ceil(2);
    let p = z6v_refined_det(n, caps)?;
    let (e2, e1) = if m.is_multiple_of(2) { (n * (n - 1) / 2, n) } else { ((n - 1) * (n.saturating_sub(2)) / 2, n - 1) };
    let scale = BigInt::from(pow2(e2));
    let poly = p.mul(&RefinedPoly::one_plus_tau_pow(e1)).scale(&scale);
    if poly.coeffs().iter().any(|c| c.is_negative()) {
        return Err(Error::DomainMismatch("negative refined coefficient".into()));
    }
    let poly = poly.map(|c| c.to_biguint().expect("checked non-negative"));
    Ok(match bc {
        BoundaryKind::Dwbc3 => poly,
        _ => poly.reversed(m),
    })
}

/// Sum over 6V configurations on the `n×n` grid with domain-wall boundary: a path enters from the
/// left on every row and leaves through the bottom of every column. `cell(row, col)` gives
/// `(a, b, c)` with rows counted from the top and columns from the left.
pub fn brute_6v_dwbc<W: Weight, F>(n: usize, cell: &F) -> Result<W>
where
    F: Fn(usize, usize) -> (W, W, W),
{
    if n > 5 {
        return Err(Error::SizeCapExceeded { route: "6V brute force", m: n, cap: 5 });
    }
    if n == 0 {
        return Ok(W::one());
    }
    let mut vin = vec![false; n];
    let mut total = W::zero();
    rec6(n, cell, 0, 0, true, &mut vin, W::one(), &mut total);
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn rec6<W: Weight, F: Fn(usize, usize) -> (W, W, W)>(
    n: usize,
    cell: &F,
    row: usize,
    col: usize,
    h: bool,
    vin: &mut Vec<bool>,
    acc: W,
    total: &mut W,
) {
    if col == n {
        if h {
            return;
        }
        if row + 1 == n {
            if vin.iter().all(|&b| b) {
                *total += &acc;
            }
        } else {
            rec6(n, cell, row + 1, 0, true, vin, acc, total);
        }
        return;
    }
    let iv = vin[col];
    let (a, b, c) = cell(row, col);
    for ov in [false, true] {
        let paths = h as i32 + iv as i32 - ov as i32;
        if !(0..=1).contains(&paths) {
            continue;
        }
        let oh = paths == 1;
        let w = if h == oh && iv == ov && h == iv {
            a.clone()
        } else if h == oh && iv == ov {
            b.clone()
        } else {
            c.clone()
        };
        vin[col] = ov;
        rec6(n, cell, row, col + 1, oh, vin, acc.clone() * w, total);
        vin[col] = iv;
    }
}

/// `Z_n^{6V}` of the combinatorial point by brute force, in floating point.
pub fn brute_6v_combinatorial(n: usize) -> Result<f64> {
    let s = std::f64::consts::SQRT_2;
    brute_6v_dwbc(n, &|_, _| (1.0, s, 1.0))
}

/// Nearest integer check used when comparing float results with exact ones.
pub fn close_to(v: f64, exact: &BigUint, rel: f64) -> bool {
    let e = exact.to_f64().unwrap_or(f64::INFINITY);
    (v - e).abs() <= rel * e.abs().max(1.0)
}
