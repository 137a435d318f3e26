use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{kappa_with_derivative, slope_generic, slope_with_derivative, TangentLine};
use crate::error::{Error, Result};
use crate::weights::WeightParams;

/// Points closer than this to a range boundary are replaced by the boundary limit.
pub const ENDPOINT_OFFSET: f64 = 1e-7;
/// Largest sampling step for the boundary extrapolation.
const EXTRAPOLATION_STEP: f64 = 1e-3;
/// Sampling step around an interior pole of `A` and `κ`.
const POLE_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchKind {
    NE,
    SE,
    NW,
}

impl BranchKind {
    pub const ALL: [BranchKind; 3] = [BranchKind::NE, BranchKind::SE, BranchKind::NW];

    pub fn name(self) -> &'static str {
        match self {
            BranchKind::NE => "NE",
            BranchKind::SE => "SE",
            BranchKind::NW => "NW",
        }
    }

    /// `(start, end)` of the ξ interval; it may run backwards outside the disordered phase.
    pub fn xi_range(self, p: &WeightParams) -> (f64, f64) {
        let WeightParams { eta, lambda, mu, .. } = *p;
        match self {
            BranchKind::NE => (0.0, std::f64::consts::PI - eta - lambda),
            BranchKind::SE => (-(lambda - eta + mu) / 2.0, 0.0),
            BranchKind::NW => (-(lambda - eta - mu) / 2.0, 0.0),
        }
    }
}

impl std::fmt::Display for BranchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One point of a branch together with the tangent line it was built from.
///
/// `slope` and `kappa` are the branch's own functions: `(A, κ)` for NE, `(Â, κ)` for SE and
/// `(Ā, κ*)` for NW. Both are `None` where they diverge: at some endpoints, and in the
/// free-fermion gauge at isolated interior points where `A` and `κ` share a pole. The point and
/// its tangent line stay finite there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub xi: f64,
    pub x: f64,
    pub y: f64,
    pub slope: Option<f64>,
    pub kappa: Option<f64>,
    pub line: TangentLine,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveBranch {
    pub kind: BranchKind,
    pub params: WeightParams,
    #[serde(rename = "xiRange")]
    pub xi_range: (f64, f64),
    pub points: Vec<BranchPoint>,
}

impl CurveBranch {
    /// Largest excursion outside `{x + y ≥ 0, x ≤ 0, y ≤ 2}`.
    pub fn domain_excess(&self) -> f64 {
        self.points
            .iter()
            .map(|q| (-(q.x + q.y)).max(q.x).max(q.y - 2.0).max(0.0))
            .fold(0.0, f64::max)
    }

    /// Largest distance of a point from its own tangent line.
    pub fn max_tangency_residual(&self) -> f64 {
        self.points.iter().map(|q| q.line.residual(q.x, q.y).abs()).fold(0.0, f64::max)
    }

    pub fn xy(&self) -> Vec<(f64, f64)> {
        self.points.iter().map(|q| (q.x, q.y)).collect()
    }
}

struct Raw {
    x: f64,
    y: f64,
    slope: f64,
    kappa: f64,
    line: [f64; 3],
}

fn hat_slope(p: &WeightParams, xi: f64) -> Result<(f64, f64)> {
    let h = p.hat();
    let (v, d) = num_dual::first_derivative(
        |x: num_dual::Dual64| slope_generic(&h, -x).unwrap_or(num_dual::Dual64::from(f64::NAN)),
        xi,
    );
    slope_generic(&h, -xi)?;
    finite2(v, d, "hat slope")
}

fn bar_slope(p: &WeightParams, xi: f64) -> Result<(f64, f64)> {
    let b = p.bar();
    let (v, d) = num_dual::first_derivative(
        |x: num_dual::Dual64| slope_generic(&b, -x).unwrap_or(num_dual::Dual64::from(f64::NAN)),
        xi,
    );
    slope_generic(&b, -xi)?;
    finite2(v, d, "bar slope")
}

fn finite2(v: f64, d: f64, what: &'static str) -> Result<(f64, f64)> {
    if v.is_finite() && d.is_finite() {
        Ok((v, d))
    } else {
        Err(Error::NonFiniteValue(what))
    }
}

fn nonzero(d: f64, xi: f64, what: &'static str) -> Result<f64> {
    if d.abs() < crate::weights::POLE_TOL {
        Err(Error::Pole { xi, what })
    } else {
        Ok(d)
    }
}

fn raw_point(p: &WeightParams, kind: BranchKind, xi: f64) -> Result<Raw> {
    let r = match kind {
        BranchKind::NE => {
            let (k, dk) = kappa_with_derivative(p, xi)?;
            let (a, da) = slope_with_derivative(p, xi)?;
            let x = dk / nonzero(da, xi, "A'")?;
            Raw { x, y: k - a * x, slope: a, kappa: k, line: [a, 1.0, -k] }
        }
        BranchKind::SE => {
            let (k, dk) = kappa_with_derivative(p, xi)?;
            let (a, da) = hat_slope(p, xi)?;
            let x = -dk / nonzero(da, xi, "hat A'")?;
            Raw { x, y: k - (a - 1.0) * dk / da, slope: a, kappa: k, line: [1.0 - a, 1.0, -k] }
        }
        BranchKind::NW => {
            let (k, dk) = kappa_with_derivative(&p.star(), xi)?;
            let (a, da) = bar_slope(p, xi)?;
            let r = dk / nonzero(da, xi, "bar A'")?;
            Raw { x: k - 2.0 - (a - 1.0) * r, y: 2.0 - r, slope: a, kappa: k, line: [1.0, 1.0 - a, 2.0 * a - k] }
        }
    };
    if [r.x, r.y, r.slope, r.kappa].iter().all(|v| v.is_finite()) {
        Ok(r)
    } else {
        Err(Error::NonFiniteValue("branch point"))
    }
}

fn unit(l: [f64; 3]) -> [f64; 3] {
    let n = l[0].hypot(l[1]);
    [l[0] / n, l[1] / n, l[2] / n]
}

/// `3P(b + δ) − 3P(b + 2δ) + P(b + 3δ)` for `(x, y, κ, unit line)`.
fn extrapolate(p: &WeightParams, kind: BranchKind, b: f64, dir: f64, h: f64) -> Result<[f64; 6]> {
    let r = [1.0, 2.0, 3.0].map(|k| raw_point(p, kind, b + k * dir * h));
    let mut out = [0.0; 6];
    for (w, r) in [3.0, -3.0, 1.0].into_iter().zip(r) {
        let r = r?;
        let l = unit(r.line);
        for (o, v) in out.iter_mut().zip([r.x, r.y, r.kappa, l[0], l[1], l[2]]) {
            *o += w * v;
        }
    }
    Ok(out)
}

/// The branch point at `xi`; at (or within [`ENDPOINT_OFFSET`] of) a range boundary the value is
/// the one-sided limit `3P(e + δ) − 3P(e + 2δ) + P(e + 3δ)`.
pub fn branch_point(p: &WeightParams, kind: BranchKind, xi: f64) -> Result<BranchPoint> {
    let (s, e) = kind.xi_range(p);
    let near = |b: f64| (xi - b).abs() < ENDPOINT_OFFSET;
    let inward = |b: f64, other: f64| if other >= b { 1.0 } else { -1.0 };
    let edge = if near(s) {
        Some((s, inward(s, e)))
    } else if near(e) {
        Some((e, inward(e, s)))
    } else {
        None
    };
    match edge {
        None => match raw_point(p, kind, xi) {
            Ok(r) => {
                let l = r.line;
                Ok(BranchPoint {
                    xi,
                    x: r.x,
                    y: r.y,
                    slope: Some(r.slope),
                    kappa: Some(r.kappa),
                    line: TangentLine::new(xi, l[0], l[1], l[2])?,
                })
            }
            Err(Error::Pole { .. } | Error::NonFiniteValue(_)) => across_pole(p, kind, xi),
            Err(e) => Err(e),
        },
        Some((b, dir)) => {
            // the formulas cancel near some boundaries, so too small a step is as bad as too large
            // a one; keep the estimate that agrees best with the one at twice the step
            let mut h = EXTRAPOLATION_STEP.min((e - s).abs() / 8.0).max(ENDPOINT_OFFSET);
            let mut prev = extrapolate(p, kind, b, dir, h)?;
            let mut best = (f64::INFINITY, prev);
            while h > 16.0 * ENDPOINT_OFFSET {
                h /= 2.0;
                let Ok(cur) = extrapolate(p, kind, b, dir, h) else { break };
                let change = (0..6).map(|i| (cur[i] - prev[i]).abs()).fold(0.0, f64::max);
                if change < best.0 {
                    best = (change, cur);
                }
                prev = cur;
            }
            let [x, y, kappa, l0, l1, l2] = best.1;
            let l = [l0, l1, l2];
            let slope = match raw_point(p, kind, b) {
                Ok(r) => Some(r.slope),
                Err(_) => None,
            };
            Ok(BranchPoint {
                xi: b,
                x,
                y,
                slope,
                kappa: Some(kappa),
                line: TangentLine::new(b, l[0], l[1], l[2])?,
            })
        }
    }
}

/// Fourth-order interpolation from `ξ ± h` and `ξ ± 2h`. The line normal flips sign when `A`
/// passes through infinity, so every line is oriented like the first before averaging.
fn across_pole(p: &WeightParams, kind: BranchKind, xi: f64) -> Result<BranchPoint> {
    let h = POLE_STEP * xi.abs().max(1.0);
    let mut out = [0.0; 5];
    let mut first: Option<[f64; 3]> = None;
    for (w, k) in [(-1.0, -2.0), (4.0, -1.0), (4.0, 1.0), (-1.0, 2.0)] {
        let r = raw_point(p, kind, xi + k * h)?;
        let mut l = unit(r.line);
        let f = *first.get_or_insert(l);
        if f[0] * l[0] + f[1] * l[1] < 0.0 {
            l = l.map(|v| -v);
        }
        for (o, v) in out.iter_mut().zip([r.x, r.y, l[0], l[1], l[2]]) {
            *o += w / 6.0 * v;
        }
    }
    let [x, y, l0, l1, l2] = out;
    Ok(BranchPoint { xi, x, y, slope: None, kappa: None, line: TangentLine::new(xi, l0, l1, l2)? })
}

/// `num_points` equally spaced samples of a branch, endpoints included.
pub fn branch(p: &WeightParams, kind: BranchKind, num_points: usize) -> Result<CurveBranch> {
    if num_points < 2 {
        return Err(Error::InvalidRegion("a branch needs at least two points".into()));
    }
    p.regime()?;
    let (s, e) = kind.xi_range(p);
    let points = (0..num_points)
        .into_par_iter()
        .map(|i| {
            let xi = if i + 1 == num_points { e } else { s + (e - s) * i as f64 / (num_points - 1) as f64 };
            branch_point(p, kind, xi)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveBranch { kind, params: *p, xi_range: (s, e), points })
}
