use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{path_alphas, tau_xi, twenty_v_weights, WeightParams};

/// Rescaled step counts of the free path segment: `q₃..q₆` for the composite steps and the exit
/// ratio `s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaddleState {
    pub q3: f64,
    pub q4: f64,
    pub q5: f64,
    pub q6: f64,
    pub s: f64,
}

/// An α below this is treated as zero and its step dropped.
const ALPHA_ZERO: f64 = 1e-12;

struct Brackets {
    n1: f64,
    n2: f64,
    big_n: f64,
}

impl SaddleState {
    fn as_array(&self) -> [f64; 5] {
        [self.q3, self.q4, self.q5, self.q6, self.s]
    }

    fn from_array(v: [f64; 5]) -> Self {
        SaddleState { q3: v[0], q4: v[1], q5: v[2], q6: v[3], s: v[4] }
    }

    fn brackets(&self) -> Brackets {
        let SaddleState { q3, q4, q5, q6, s } = *self;
        Brackets {
            n1: 1.0 - q3 - 2.0 * q4 - q5 - 2.0 * q6,
            n2: s - q3 - q4 - 2.0 * q5 - 2.0 * q6,
            big_n: 1.0 + s - q3 - 2.0 * q4 - 2.0 * q5 - 3.0 * q6,
        }
    }
}

// Exponents of (N, n₁, n₂, α₁, α₂) in each ratio equation.
const POWERS: [[f64; 5]; 4] = [
    [1.0, 1.0, 1.0, 1.0, 1.0],
    [2.0, 2.0, 1.0, 2.0, 1.0],
    [2.0, 1.0, 2.0, 1.0, 2.0],
    [3.0, 2.0, 2.0, 2.0, 2.0],
];

fn active(alpha: &[f64; 6]) -> [bool; 4] {
    std::array::from_fn(|i| alpha[i + 2].abs() > ALPHA_ZERO)
}

/// Log-form residuals of the five saddle equations. Inactive steps (α = 0) contribute 0.
pub fn saddle_residuals(alpha: &[f64; 6], tau: f64, st: &SaddleState) -> Result<[f64; 5]> {
    let Brackets { n1, n2, big_n } = st.brackets();
    if n1 <= 0.0 || n2 <= 0.0 || big_n <= 0.0 || tau <= 0.0 || alpha[0] <= 0.0 || alpha[1] <= 0.0 {
        return Err(Error::InvalidRegion(format!(
            "saddle brackets must be positive (n1 = {n1}, n2 = {n2}, N = {big_n}, tau = {tau})"
        )));
    }
    let q = st.as_array();
    let on = active(alpha);
    let mut r = [0.0; 5];
    for i in 0..4 {
        if !on[i] {
            continue;
        }
        let ratio = q[i] / alpha[i + 2];
        if ratio <= 0.0 {
            return Err(Error::InvalidRegion(format!("q{} / alpha{} = {ratio} is not positive", i + 3, i + 3)));
        }
        let e = POWERS[i];
        r[i] = ratio.ln() + e[0] * big_n.ln() - e[1] * n1.ln() - e[2] * n2.ln() + e[3] * alpha[0].ln() + e[4] * alpha[1].ln();
    }
    r[4] = big_n.ln() - n1.ln() - tau.ln();
    Ok(r)
}

fn jacobian(alpha: &[f64; 6], st: &SaddleState) -> DMatrix<f64> {
    let Brackets { n1, n2, big_n } = st.brackets();
    let q = st.as_array();
    let dn = [-1.0, -2.0, -2.0, -3.0, 1.0];
    let dn1 = [-1.0, -2.0, -1.0, -2.0, 0.0];
    let dn2 = [-1.0, -1.0, -2.0, -2.0, 1.0];
    let on = active(alpha);
    let mut j = DMatrix::zeros(5, 5);
    for i in 0..4 {
        if !on[i] {
            j[(i, i)] = 1.0;
            continue;
        }
        let e = POWERS[i];
        for k in 0..5 {
            j[(i, k)] = e[0] * dn[k] / big_n - e[1] * dn1[k] / n1 - e[2] * dn2[k] / n2;
        }
        j[(i, i)] += 1.0 / q[i];
    }
    for k in 0..5 {
        j[(4, k)] = dn[k] / big_n - dn1[k] / n1;
    }
    j
}

fn alphas_and_tau(p: &WeightParams, xi: f64) -> Result<([f64; 6], f64)> {
    let w = twenty_v_weights(p).gauge_positive();
    Ok((path_alphas(&w)?.alpha, tau_xi(p, xi)?))
}

/// Closed elimination: with `X̃ = 1/(τα₁)` the exit point sits on the singular curve
/// `Σ α-monomials = 1`, which is a quadratic in `Ỹ`.
pub fn saddle_reduced(p: &WeightParams, xi: f64) -> Result<SaddleState> {
    let (a, tau) = alphas_and_tau(p, xi)?;
    let x = 1.0 / (tau * a[0]);
    let qa = a[4] * x + a[5] * x * x;
    let qb = a[1] + a[2] * x + a[3] * x * x;
    let qc = a[0] * x - 1.0;
    let mut roots = Vec::new();
    if qa.abs() < 1e-14 * qb.abs().max(1.0) {
        roots.push(-qc / qb);
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            roots.push((-qb + sq) / (2.0 * qa));
            roots.push((-qb - sq) / (2.0 * qa));
        }
    }
    let mut last_err = Error::InvalidRegion(format!("no admissible exit point at xi = {xi}"));
    for y in roots {
        if !(y > 0.0) {
            continue;
        }
        let m = [a[0] * x, a[1] * y, a[2] * x * y, a[3] * x * x * y, a[4] * x * y * y, a[5] * x * x * y * y];
        let dx = m[0] + m[2] + 2.0 * m[3] + m[4] + 2.0 * m[5];
        let dy = m[1] + m[2] + m[3] + 2.0 * m[4] + 2.0 * m[5];
        let st = SaddleState { q3: m[2] / dx, q4: m[3] / dx, q5: m[4] / dx, q6: m[5] / dx, s: dy / dx };
        match saddle_residuals(&a, tau, &st) {
            Ok(_) => return Ok(st),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Newton iteration on the log-form saddle system, seeded by [`saddle_reduced`] unless a guess
/// is supplied. Stops when the residual is below 1e-13 or the step no longer moves the state.
pub fn saddle_solve(p: &WeightParams, xi: f64, initial: Option<SaddleState>) -> Result<SaddleState> {
    let (a, tau) = alphas_and_tau(p, xi)?;
    let on = active(&a);
    let mut st = match initial {
        Some(s) => s,
        None => saddle_reduced(p, xi)?,
    };
    let mut v = st.as_array();
    for i in 0..4 {
        if !on[i] {
            v[i] = 0.0;
        }
    }
    st = SaddleState::from_array(v);
    let norm = |r: &[f64; 5]| r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut r = saddle_residuals(&a, tau, &st)?;
    const MAX_ITER: usize = 100;
    for _ in 0..MAX_ITER {
        if norm(&r) < 1e-13 {
            return Ok(st);
        }
        let j = jacobian(&a, &st);
        let rhs = DVector::from_iterator(5, r.iter().map(|x| -x));
        let step = j.lu().solve(&rhs).ok_or(Error::NoConvergence { iterations: 0, residual: norm(&r) })?;
        // near the edges of the phase the brackets cancel and the residual has a rounding floor
        let size = st.as_array().iter().fold(1.0f64, |m, x| m.max(x.abs()));
        if step.amax() <= 1e-14 * size {
            return Ok(st);
        }
        let mut t = 1.0;
        loop {
            let mut nv = st.as_array();
            for k in 0..5 {
                nv[k] += t * step[k];
            }
            let cand = SaddleState::from_array(nv);
            if let Ok(nr) = saddle_residuals(&a, tau, &cand) {
                if norm(&nr) < norm(&r) || t < 1e-3 {
                    st = cand;
                    r = nr;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-10 {
                return Err(Error::InvalidRegion("Newton step left the admissible region".into()));
            }
        }
    }
    if norm(&r) < 1e-10 {
        Ok(st)
    } else {
        Err(Error::NoConvergence { iterations: MAX_ITER, residual: norm(&r) })
    }
}
