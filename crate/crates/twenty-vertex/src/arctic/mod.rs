//! Tangent-method arctic curves in the rescaled frame `{x + y ≥ 0, x ≤ 0, y ≤ 2}`.
//!
//! The scalar building blocks are generic over [`num_dual::DualNum`], so the same code yields
//! values and exact ξ-derivatives.

mod branch;
mod limits;
mod saddle;
mod uniform;

use num_dual::{first_derivative, Dual64, DualNum};

use crate::error::{Error, Result};
use crate::weights::{WeightParams, POLE_TOL};

pub use branch::{branch, branch_point, BranchKind, BranchPoint, CurveBranch, ENDPOINT_OFFSET};
pub use limits::{
    classify_limit, free_fermion_limit, hausdorff, hausdorff_sets, lambda_lower_curve, lambda_upper_ellipse_far,
    lambda_upper_ellipse_near, lambda_upper_segment, LimitCase, LimitShape, Polyline,
};
pub use saddle::{saddle_reduced, saddle_residuals, saddle_solve, SaddleState};
pub use uniform::{uniform_curve_poly, uniform_curve_residual};

/// `a·X + b·Y + c = 0` with `(a, b)` a unit normal.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TangentLine {
    pub xi: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TangentLine {
    /// Normalizes any nonzero `(a, b)`.
    pub fn new(xi: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n.is_finite() && n > 0.0 && c.is_finite()) {
            return Err(Error::NonFiniteValue("tangent line"));
        }
        Ok(TangentLine { xi, a: a / n, b: b / n, c: c / n })
    }

    /// The line `Y + A·X − κ = 0`.
    pub fn from_slope(xi: f64, slope: f64, kappa: f64) -> Result<Self> {
        Self::new(xi, slope, 1.0, -kappa)
    }

    /// Signed distance of a point from the line.
    pub fn residual(&self, x: f64, y: f64) -> f64 {
        self.a * x + self.b * y + self.c
    }

    /// Unit direction along the line.
    pub fn direction(&self) -> (f64, f64) {
        (self.b, -self.a)
    }

    /// `(A, κ)` when the line is not vertical.
    pub fn slope_form(&self) -> Option<(f64, f64)> {
        (self.b.abs() > POLE_TOL).then(|| (self.a / self.b, -self.c / self.b))
    }
}

fn check_pole<D: DualNum<Primitive = f64> + Copy>(d: D, xi: f64, what: &'static str) -> Result<()> {
    if d.re().abs() < POLE_TOL {
        Err(Error::Pole { xi, what })
    } else {
        Ok(())
    }
}

fn sinc<D: DualNum<Primitive = f64> + Copy>(x: D) -> D {
    x.sph_j0()
}

/// Bernoulli weights `2^{2k}|B_{2k}|/(2k)!` of the cotangent series.
const COT_SERIES: [f64; 8] = [
    1.0 / 3.0,
    1.0 / 45.0,
    2.0 / 945.0,
    1.0 / 4725.0,
    2.0 / 93555.0,
    1382.0 / 638512875.0,
    4.0 / 18243225.0,
    3617.0 / 162820783125.0,
];

/// `α·cot(αξ) − cot ξ`, regular at ξ = 0.
fn cot_gap<D: DualNum<Primitive = f64> + Copy>(alpha: f64, xi: D) -> D {
    if (alpha * xi.re()).abs() < 0.25 {
        let x2 = xi * xi;
        let mut pow = xi;
        let mut a2k = 1.0;
        let mut acc = D::zero();
        for c in COT_SERIES {
            a2k *= alpha * alpha;
            acc += pow * (c * (1.0 - a2k));
            pow *= x2;
        }
        acc
    } else {
        let ax = xi * alpha;
        ax.cos() / ax.sin() * alpha - xi.cos() / xi.sin()
    }
}

/// `κ[ξ]` with the removable singularities at `ξ = 0`, `ξ + λ − η = 0` and `ξ = π − η − λ`
/// rewritten in terms of `sinc`.
pub(crate) fn kappa_generic<D: DualNum<Primitive = f64> + Copy>(p: &WeightParams, xi: D) -> Result<D> {
    let WeightParams { eta, lambda, mu, .. } = *p;
    let alpha = p.alpha_ff();
    let xr = xi.re();
    let u = xi + (lambda - eta);
    let v = xi + (lambda + eta);
    let s_u = u.sin();
    let s_v = v.sin();
    let s1 = s_v * s_u;
    let s2 = (xi + (lambda - eta + mu) / 2.0).sin() * (xi + (lambda + 3.0 * eta + mu) / 2.0).sin();
    let den = (s1 + s2) * (2.0 * eta).sin();
    check_pole(den, xr, "kappa denominator")?;
    // −α·cot(αu)·sin u·sin v, through whichever of u, v − π is far from a zero of sin(α·).
    let cross = if (alpha * u.re()).abs() < std::f64::consts::FRAC_PI_2 {
        let r = sinc(u * alpha);
        check_pole(r, xr, "kappa sinc(alpha u)")?;
        -(u * alpha).cos() * sinc(u) / r * s_v
    } else {
        let w = v - std::f64::consts::PI;
        let r = sinc(w * alpha);
        check_pole(r, xr, "kappa sinc(alpha w)")?;
        -(u * alpha).cos() * sinc(w) / r * s_u
    };
    if (alpha * xr).abs() >= 0.25 {
        check_pole((xi * alpha).sin(), xr, "kappa cot(alpha xi)")?;
        check_pole(xi.sin(), xr, "kappa cot(xi)")?;
    }
    let num = u.cos() * s_v * 2.0 + cross - v.cos() * s_u + cot_gap(alpha, xi) * s1;
    Ok(num * s2 / den)
}

/// `A[ξ] = s[ξ]⁻¹`.
pub(crate) fn slope_generic<D: DualNum<Primitive = f64> + Copy>(p: &WeightParams, xi: D) -> Result<D> {
    let WeightParams { eta, lambda, mu, .. } = *p;
    let xr = xi.re();
    let s1 = (xi + (lambda + eta)).sin() * (xi + (lambda - eta)).sin();
    let s2 = (xi + (lambda - eta + mu) / 2.0).sin() * (xi + (lambda + 3.0 * eta + mu) / 2.0).sin();
    let s0 = xi.sin() * (xi + 2.0 * eta).sin();
    check_pole(s0, xr, "slope sin(xi) sin(xi + 2 eta)")?;
    check_pole(s1 + s2, xr, "slope denominator")?;
    Ok(s1 / s0 * (s0 + s2) / (s1 + s2))
}

fn finite(v: f64, what: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteValue(what))
    }
}

/// Exit intercept `κ[ξ]` of the tangent line.
pub fn kappa_of_xi(p: &WeightParams, xi: f64) -> Result<f64> {
    finite(kappa_generic(p, xi)?, "kappa")
}

/// Inverse slope `A[ξ]` of the tangent line.
pub fn slope_a(p: &WeightParams, xi: f64) -> Result<f64> {
    finite(slope_generic(p, xi)?, "slope")
}

/// `(κ, κ′)` by forward-mode differentiation.
pub fn kappa_with_derivative(p: &WeightParams, xi: f64) -> Result<(f64, f64)> {
    let (v, d) = first_derivative(|x: Dual64| kappa_generic(p, x).unwrap_or(Dual64::from(f64::NAN)), xi);
    kappa_of_xi(p, xi)?;
    Ok((v, finite(d, "kappa derivative")?))
}

/// `(A, A′)` by forward-mode differentiation.
pub fn slope_with_derivative(p: &WeightParams, xi: f64) -> Result<(f64, f64)> {
    let (v, d) = first_derivative(|x: Dual64| slope_generic(p, x).unwrap_or(Dual64::from(f64::NAN)), xi);
    slope_a(p, xi)?;
    Ok((v, finite(d, "slope derivative")?))
}

/// The tangent line `Y + A[ξ]X − κ[ξ] = 0`.
pub fn tangent_line(p: &WeightParams, xi: f64) -> Result<TangentLine> {
    TangentLine::from_slope(xi, slope_a(p, xi)?, kappa_of_xi(p, xi)?)
}

/// `f(σ[ξ])`, the free-energy term of the vertex-model action, as a function of ξ.
pub fn free_energy_f(p: &WeightParams, xi: f64) -> Result<f64> {
    let WeightParams { eta, lambda, .. } = *p;
    let a = p.alpha_ff();
    let num = (a * (lambda - eta)).sin() * (xi + lambda - eta).sin() * (a * xi).sin();
    let den = a * (lambda - eta).sin() * (a * (xi + lambda - eta)).sin() * xi.sin();
    if den.abs() < POLE_TOL {
        return Err(Error::Pole { xi, what: "f(sigma) denominator" });
    }
    let r = num / den;
    if r <= 0.0 {
        return Err(Error::InvalidRegion(format!("f(sigma) argument {r} is not positive")));
    }
    finite(r.ln(), "f(sigma)")
}

/// Central differences refined by Richardson extrapolation (Ridders' tableau). Starting steps
/// from `0.02·max(1, |ξ|)` down by factors of 8 are tried, and the estimate with the smallest
/// tableau error wins.
pub fn derivative<F: Fn(f64) -> f64>(f: F, xi: f64) -> Result<f64> {
    let mut h0 = 0.02 * xi.abs().max(1.0);
    let mut best: Option<(f64, f64)> = None;
    let mut last_err = Error::NonFiniteValue("derivative sample");
    while h0 >= 1e-8 {
        match ridders(&f, xi, h0) {
            Ok((d, e)) => {
                if best.is_none_or(|(_, be)| e < be) {
                    best = Some((d, e));
                }
                if e <= 1e-13 * d.abs().max(1.0) {
                    break;
                }
            }
            Err(e) => last_err = e,
        }
        h0 /= 8.0;
    }
    match best {
        Some((d, _)) => finite(d, "derivative"),
        None => Err(last_err),
    }
}

/// Estimate and error estimate from one tableau.
fn ridders<F: Fn(f64) -> f64>(f: &F, xi: f64, mut h: f64) -> Result<(f64, f64)> {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    const NTAB: usize = 12;
    let mut a = [[0.0f64; NTAB]; NTAB];
    let central = |h: f64| -> Result<f64> {
        let (fp, fm) = (f(xi + h), f(xi - h));
        if fp.is_finite() && fm.is_finite() {
            Ok((fp - fm) / (2.0 * h))
        } else {
            Err(Error::NonFiniteValue("derivative sample"))
        }
    };
    a[0][0] = central(h)?;
    let mut best = a[0][0];
    let mut err = f64::INFINITY;
    for i in 1..NTAB {
        h /= CON;
        a[0][i] = central(h)?;
        let mut fac = CON2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let e = (a[j][i] - a[j - 1][i]).abs().max((a[j][i] - a[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = a[j][i];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    Ok((finite(best, "derivative")?, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn uniform() -> WeightParams {
        WeightParams::new(PI / 8.0, 5.0 * PI / 8.0, 0.0)
    }

    #[test]
    fn uniform_slope_is_cot_two_xi() {
        let p = uniform();
        for i in 1..40 {
            let xi = i as f64 * (PI / 4.0) / 40.0;
            assert!((slope_a(&p, xi).unwrap() - 1.0 / (2.0 * xi).tan()).abs() < 1e-12);
        }
        assert!((slope_a(&p, PI / 8.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn uniform_kappa_at_pi_over_8() {
        let k = kappa_of_xi(&uniform(), PI / 8.0).unwrap();
        assert!(k > 0.0 && k < 2.0);
        assert!((k - 1.3401).abs() < 1e-4, "{k}");
    }

    #[test]
    fn kappa_series_and_direct_forms_agree() {
        let p = WeightParams::new(0.3, 1.4, 0.2);
        let a = p.alpha_ff();
        let cut = 0.25 / a;
        let below = kappa_of_xi(&p, cut * (1.0 - 1e-9)).unwrap();
        let above = kappa_of_xi(&p, cut * (1.0 + 1e-9)).unwrap();
        assert!((below - above).abs() < 1e-8);
    }

    #[test]
    fn kappa_matches_cotangent_formula_in_the_bulk() {
        let p = WeightParams::new(0.3, 1.4, 0.2);
        let (eta, lambda, mu) = (p.eta, p.lambda, p.mu);
        let a = p.alpha_ff();
        let cot = |x: f64| 1.0 / x.tan();
        for xi in [0.2, 0.7, 1.1] {
            let pp = 2.0 * cot(xi + lambda - eta) - cot(xi) - cot(xi + lambda + eta) + a * cot(a * xi)
                - a * cot(a * (xi + lambda - eta));
            let s1 = (xi + lambda + eta).sin() * (xi + lambda - eta).sin();
            let s2 = (xi + (lambda - eta + mu) / 2.0).sin() * (xi + (lambda + 3.0 * eta + mu) / 2.0).sin();
            let want = pp * s1 * s2 / ((2.0 * eta).sin() * (s1 + s2));
            assert!((kappa_of_xi(&p, xi).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn kappa_has_a_finite_limit_at_zero() {
        let p = WeightParams::new(0.3, 1.4, 0.2);
        let k0 = kappa_of_xi(&p, 0.0).unwrap();
        let k1 = kappa_of_xi(&p, 1e-6).unwrap();
        assert!(k0.is_finite() && (k0 - k1).abs() < 1e-5);
    }

    #[test]
    fn richardson_derivative_of_cot() {
        let d = derivative(|x| 1.0 / (2.0 * x).tan(), PI / 8.0).unwrap();
        assert!((d + 4.0).abs() < 1e-9, "{d}");
    }

    #[test]
    fn richardson_agrees_with_forward_mode() {
        let p = WeightParams::new(0.3, 1.4, 0.2);
        for xi in [0.1, 0.5, 1.0] {
            let (_, dk) = kappa_with_derivative(&p, xi).unwrap();
            let rk = derivative(|x| kappa_of_xi(&p, x).unwrap_or(f64::NAN), xi).unwrap();
            assert!((dk - rk).abs() < 1e-8 * dk.abs().max(1.0));
            let (_, da) = slope_with_derivative(&p, xi).unwrap();
            let ra = derivative(|x| slope_a(&p, x).unwrap_or(f64::NAN), xi).unwrap();
            assert!((da - ra).abs() < 1e-8 * da.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_reports_non_finite_samples() {
        assert!(matches!(derivative(|x| (x - 1.0).sqrt(), 1.0), Err(Error::NonFiniteValue(_))));
    }

    #[test]
    fn tangent_line_slope_form_round_trips() {
        let l = TangentLine::from_slope(0.3, 2.0, 1.5).unwrap();
        let (a, k) = l.slope_form().unwrap();
        assert!((a - 2.0).abs() < 1e-15 && (k - 1.5).abs() < 1e-15);
        assert!(l.residual(0.0, 1.5).abs() < 1e-15);
    }
}
