//! Degenerate free-fermion curves at the edges of the `η = π/4` parameter region.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::branch::{branch_point, BranchKind};
use crate::error::{Error, Result};
use crate::weights::WeightParams;

pub type Polyline = Vec<(f64, f64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitCase {
    /// `λ → −π/4` at `μ = 0`.
    LambdaLower,
    /// `λ → π/4` at `μ = 0`.
    LambdaUpper,
    /// `μ → η − λ`.
    MuUpper,
    /// `μ → λ − η`.
    MuLower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitShape {
    pub case: LimitCase,
    pub segments: Vec<[(f64, f64); 2]>,
    pub arcs: Vec<Polyline>,
    /// `[a, b, c, d, e, f]` of `ax² + bxy + cy² + dx + ey + f = 0`, unit norm, when fitted.
    pub conic: Option<[f64; 6]>,
    /// Relative size of the smallest singular value in the conic fit.
    pub conic_fit: Option<f64>,
    /// Where a branch with an empty ξ range sits.
    pub collapsed: Option<(f64, f64)>,
}

/// `λ = −π/4 + ε`, `ξ = t√ε`: the NE branch tends to this curve, running along the segment
/// from `(0, 2)` (t = 0) to `(−1, 1)` (t → ∞).
pub fn lambda_lower_curve(t: f64) -> (f64, f64) {
    if t.is_infinite() {
        return (-1.0, 1.0);
    }
    let r = 4.0 * t * t / (1.0 + 4.0 * t * t);
    (-r, 2.0 - r)
}

/// `λ = π/4 − ε` at fixed ξ ∈ [0, π/2].
pub fn lambda_upper_segment(xi: f64) -> (f64, f64) {
    let c = (2.0 * xi).cos();
    ((2.0 * c - 3.0) / 4.0, (5.0 - 2.0 * c) / 4.0)
}

/// `λ = π/4 − ε`, `ξ = tε`.
pub fn lambda_upper_ellipse_near(t: f64) -> (f64, f64) {
    if t.is_infinite() {
        return (-0.25, 0.75);
    }
    let d = 8.0 * t * (1.0 - t) - 3.0;
    (2.0 * t * t / d, -(6.0 * t * t - 4.0 * t + 1.0) / d)
}

/// `λ = π/4 − ε`, `ξ = π/2 − tε`.
pub fn lambda_upper_ellipse_far(t: f64) -> (f64, f64) {
    if t.is_infinite() {
        return (-1.25, 1.75);
    }
    let d = 8.0 * t * (1.0 + t) + 3.0;
    (-(10.0 * t * t + 8.0 * t + 3.0) / d, (14.0 * t * t + 12.0 * t + 4.0) / d)
}

pub fn classify_limit(p: &WeightParams, tol: f64) -> Result<LimitCase> {
    let WeightParams { eta, lambda, mu, .. } = *p;
    if (eta - FRAC_PI_4).abs() > tol {
        return Err(Error::NotALimitCase);
    }
    if mu.abs() <= tol && (lambda + FRAC_PI_4).abs() <= tol {
        return Ok(LimitCase::LambdaLower);
    }
    if mu.abs() <= tol && (lambda - FRAC_PI_4).abs() <= tol {
        return Ok(LimitCase::LambdaUpper);
    }
    if lambda.abs() < eta {
        if (mu - (eta - lambda)).abs() <= tol {
            return Ok(LimitCase::MuUpper);
        }
        if (mu + (eta - lambda)).abs() <= tol {
            return Ok(LimitCase::MuLower);
        }
    }
    Err(Error::NotALimitCase)
}

fn sample_half_line(f: impl Fn(f64) -> (f64, f64), n: usize) -> Polyline {
    let mut out: Polyline = (0..n).map(|i| i as f64 / n as f64).map(|u| f(u / (1.0 - u))).collect();
    out.push(f(f64::INFINITY));
    out
}

/// Least-squares conic through the points, by the smallest right singular vector.
fn fit_conic(points: &[(f64, f64)]) -> Result<([f64; 6], f64)> {
    let m = DMatrix::from_fn(points.len(), 6, |i, j| {
        let (x, y) = points[i];
        [x * x, x * y, y * y, x, y, 1.0][j]
    });
    let svd = m.svd(false, true);
    let vt = svd.v_t.ok_or(Error::NonFiniteValue("conic fit"))?;
    let sv = &svd.singular_values;
    let (imin, _) = sv.argmin();
    let c: [f64; 6] = std::array::from_fn(|j| vt[(imin, j)]);
    Ok((c, sv[imin] / sv.max()))
}

/// The limiting shape at (or within `tol` of) a degenerate free-fermion parameter point.
///
/// The λ limits come from their closed forms. The μ limits have none: the two remaining branches
/// are evaluated at the limiting parameters and a single conic is fitted through them, while
/// the third branch collapses to a corner.
pub fn free_fermion_limit(p: &WeightParams, tol: f64, num_points: usize) -> Result<LimitShape> {
    let case = classify_limit(p, tol)?;
    let n = num_points.max(2);
    let shape = match case {
        LimitCase::LambdaLower => LimitShape {
            case,
            segments: vec![[lambda_lower_curve(0.0), lambda_lower_curve(f64::INFINITY)]],
            arcs: vec![sample_half_line(lambda_lower_curve, n)],
            conic: None,
            conic_fit: None,
            collapsed: None,
        },
        LimitCase::LambdaUpper => LimitShape {
            case,
            segments: vec![[lambda_upper_segment(0.0), lambda_upper_segment(FRAC_PI_2)]],
            arcs: vec![
                sample_half_line(lambda_upper_ellipse_near, n),
                sample_half_line(lambda_upper_ellipse_far, n),
            ],
            conic: None,
            conic_fit: None,
            collapsed: None,
        },
        LimitCase::MuUpper | LimitCase::MuLower => mu_limit(p, case, n)?,
    };
    Ok(shape)
}

/// Step in `μ` used to extrapolate endpoint positions onto the limit.
const MU_STEP: f64 = 1e-4;

fn endpoint(p: &WeightParams, kind: BranchKind, which_end: bool) -> Result<(f64, f64)> {
    let (s, e) = kind.xi_range(p);
    let b = branch_point(p, kind, if which_end { e } else { s })?;
    Ok((b.x, b.y))
}

/// `2P(δ) − P(2δ)` for an endpoint of the branch at `μ = sign·(η − λ − δ)`.
fn limit_endpoint(p: &WeightParams, sign: f64, kind: BranchKind, which_end: bool) -> Result<(f64, f64)> {
    let at = |d: f64| endpoint(&WeightParams { mu: sign * (p.eta - p.lambda - d), ..*p }, kind, which_end);
    let (a, b) = (at(MU_STEP)?, at(2.0 * MU_STEP)?);
    Ok((2.0 * a.0 - b.0, 2.0 * a.1 - b.1))
}

/// At `μ = ±(η − λ)` one branch has an empty ξ range and collapses to a corner, and two
/// portions of the curve squeeze into vanishing ξ intervals, leaving straight segments. The
/// remaining arcs are evaluated at the limit itself; corner and segment ends are extrapolated
/// from nearby parameters.
fn mu_limit(p: &WeightParams, case: LimitCase, n: usize) -> Result<LimitShape> {
    let sign = if case == LimitCase::MuUpper { 1.0 } else { -1.0 };
    let q = WeightParams { mu: sign * (p.eta - p.lambda), ..*p };
    let (live, dead) = if sign > 0.0 { (BranchKind::NW, BranchKind::SE) } else { (BranchKind::SE, BranchKind::NW) };
    let mut arcs = Vec::new();
    let mut all = Vec::new();
    let mut segments = Vec::new();
    for kind in [BranchKind::NE, live] {
        let (s, e) = kind.xi_range(&q);
        let pts = (0..n)
            .map(|i| {
                let xi = if i + 1 == n { e } else { s + (e - s) * i as f64 / (n - 1) as f64 };
                branch_point(&q, kind, xi).map(|b| (b.x, b.y))
            })
            .collect::<Result<Polyline>>()?;
        for (which_end, at) in [(false, pts[0]), (true, pts[n - 1])] {
            let lim = limit_endpoint(p, sign, kind, which_end)?;
            if (lim.0 - at.0).hypot(lim.1 - at.1) > 1e-6 {
                segments.push([lim, at]);
            }
        }
        all.extend(pts.iter().copied());
        arcs.push(pts);
    }
    let collapsed = limit_endpoint(p, sign, dead, false)?;
    let (conic, fit) = fit_conic(&all)?;
    Ok(LimitShape { case, segments, arcs, conic: Some(conic), conic_fit: Some(fit), collapsed: Some(collapsed) })
}

fn point_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / l2).clamp(0.0, 1.0) };
    (p.0 - a.0 - t * dx).hypot(p.1 - a.1 - t * dy)
}

fn directed(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    a.iter()
        .map(|&p| {
            if b.len() == 1 {
                (p.0 - b[0].0).hypot(p.1 - b[0].1)
            } else {
                b.windows(2).map(|w| point_segment(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
            }
        })
        .fold(0.0, f64::max)
}

/// Hausdorff distance between two polylines, measured from the vertices of each to the other.
pub fn hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    directed(a, b).max(directed(b, a))
}

/// The same for unions of polylines.
pub fn hausdorff_sets(a: &[Polyline], b: &[Polyline]) -> f64 {
    let one_way = |a: &[Polyline], b: &[Polyline]| {
        a.iter()
            .flat_map(|pa| pa.iter())
            .map(|&pt| b.iter().map(|pb| directed(&[pt], pb)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

impl LimitShape {
    /// Arcs and segments as polylines.
    pub fn pieces(&self) -> Vec<Polyline> {
        let mut out = self.arcs.clone();
        out.extend(self.segments.iter().map(|s| s.to_vec()));
        out
    }

    /// Value of the fitted conic over its gradient norm.
    pub fn conic_residual(&self, (x, y): (f64, f64)) -> Option<f64> {
        let c = self.conic?;
        let v = c[0] * x * x + c[1] * x * y + c[2] * y * y + c[3] * x + c[4] * y + c[5];
        let g = (2.0 * c[0] * x + c[1] * y + c[3]).hypot(c[1] * x + 2.0 * c[2] * y + c[4]);
        Some(v / g)
    }

    /// Unit normal of the fitted conic.
    pub fn conic_normal(&self, (x, y): (f64, f64)) -> Option<(f64, f64)> {
        let c = self.conic?;
        let (gx, gy) = (2.0 * c[0] * x + c[1] * y + c[3], c[1] * x + 2.0 * c[2] * y + c[4]);
        let n = gx.hypot(gy);
        Some((gx / n, gy / n))
    }
}
