//! Integrable weights of the 20V model and the parameter maps between its variants.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sine is treated as zero below this magnitude.
pub const POLE_TOL: f64 = 1e-13;

/// `weights(hat p)[i] = weights(p)[PI_HAT[i]]`, the cycle (01)(24).
pub const PI_HAT: [usize; 7] = [1, 0, 4, 3, 2, 5, 6];
/// `weights(star p)[i] = weights(p)[PI_BAR[i]]`, the cycle (16)(25).
pub const PI_BAR: [usize; 7] = [0, 6, 5, 3, 4, 2, 1];
/// `weights(bar p)[i] = weights(p)[PI_BAR[PI_HAT[i]]]`.
pub const PI_BAR_HAT: [usize; 7] = [6, 0, 4, 3, 5, 2, 1];

/// The integrable parameters `(η, λ, μ)` in radians plus the normalization `ν`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub eta: f64,
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
}

/// Where a parameter triple sits relative to the admissible regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// All seven weights strictly positive.
    Disordered,
    /// `η = π/4`, `|λ| < η`, `|μ| < η − λ`: ω₂ and ω₅ are negative, the rest positive.
    /// The sign is a gauge: the partition functions only see `ω₂`, `ω₅` through even combinations.
    FreeFermionGauge,
}

impl WeightParams {
    pub fn new(eta: f64, lambda: f64, mu: f64) -> Self {
        WeightParams { eta, lambda, mu, nu: 1.0 }
    }

    /// `(π/8, 5π/8, 0)` with `ν = √2`, where all seven weights equal 1.
    pub fn combinatorial() -> Self {
        WeightParams { eta: PI / 8.0, lambda: 5.0 * PI / 8.0, mu: 0.0, nu: SQRT_2 }
    }

    pub fn with_nu(self, nu: f64) -> Self {
        WeightParams { nu, ..self }
    }

    pub fn alpha_ff(&self) -> f64 {
        PI / (PI - 2.0 * self.eta)
    }

    /// The first violated inequality of the disordered phase, if any.
    pub fn disorder_violation(&self) -> Option<String> {
        let WeightParams { eta, lambda, mu, .. } = *self;
        if !(eta.is_finite() && lambda.is_finite() && mu.is_finite()) {
            return Some("parameters must be finite".into());
        }
        if eta <= 0.0 {
            return Some(format!("0 < eta fails (eta = {eta})"));
        }
        if eta >= lambda {
            return Some(format!("eta < lambda fails (eta = {eta}, lambda = {lambda})"));
        }
        if mu <= eta - lambda || mu >= lambda - eta {
            return Some(format!("eta - lambda < mu < lambda - eta fails (mu = {mu})"));
        }
        if lambda + eta >= PI {
            return Some(format!("lambda + eta < pi fails (lambda + eta = {})", lambda + eta));
        }
        if eta >= PI / 2.0 {
            return Some(format!("eta < pi/2 fails (eta = {eta})"));
        }
        None
    }

    pub fn is_disordered(&self) -> bool {
        self.disorder_violation().is_none()
    }

    pub fn check_disordered(&self) -> Result<()> {
        match self.disorder_violation() {
            None => Ok(()),
            Some(msg) => Err(Error::PhaseViolation(msg)),
        }
    }

    /// Accepts the disordered phase and the gauge-positive free-fermion region.
    pub fn regime(&self) -> Result<Regime> {
        match self.disorder_violation() {
            None => Ok(Regime::Disordered),
            Some(msg) => {
                let ff = (self.eta - PI / 4.0).abs() < 1e-12
                    && self.lambda.abs() < self.eta
                    && self.mu.abs() < self.eta - self.lambda;
                if ff {
                    Ok(Regime::FreeFermionGauge)
                } else {
                    Err(Error::PhaseViolation(msg))
                }
            }
        }
    }

    /// `λ̂ = π − (λ+η+μ)/2`, `μ̂ = π − (3λ+η−μ)/2`; pairs with `ξ̂ = −ξ`.
    pub fn hat(&self) -> Self {
        let WeightParams { eta, lambda, mu, nu } = *self;
        WeightParams {
            eta,
            lambda: PI - (lambda + eta + mu) / 2.0,
            mu: PI - (3.0 * lambda + eta - mu) / 2.0,
            nu,
        }
    }

    /// `λ̄ = π − (λ+η−μ)/2`, `μ̄ = π − (3λ+η+μ)/2`; pairs with `ξ̄ = −ξ`.
    pub fn bar(&self) -> Self {
        let WeightParams { eta, lambda, mu, nu } = *self;
        WeightParams {
            eta,
            lambda: PI - (lambda + eta - mu) / 2.0,
            mu: PI - (3.0 * lambda + eta + mu) / 2.0,
            nu,
        }
    }

    /// `μ* = −μ`.
    pub fn star(&self) -> Self {
        WeightParams { mu: -self.mu, ..*self }
    }

    fn beta(&self) -> f64 {
        self.nu.cbrt()
    }
}

/// `(a, b, c)` of one of the three underlying 6V sublattices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SixVWeights {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Weights of sublattice 1, 2 or 3 (horizontal/diagonal, horizontal/vertical, diagonal/vertical lines).
pub fn six_vertex_weights(p: &WeightParams, sublattice: u8) -> SixVWeights {
    six_vertex_weights_at(p, sublattice, 0.0)
}

/// Sublattice weights with the vertical spectral parameter shifted, `w ↦ w e^{−2iξ}`.
pub fn six_vertex_weights_at(p: &WeightParams, sublattice: u8, xi: f64) -> SixVWeights {
    let WeightParams { eta, lambda, mu, .. } = *p;
    let beta = p.beta();
    let c = beta * (2.0 * eta).sin();
    match sublattice {
        1 => SixVWeights { a: beta * (lambda + eta + xi).sin(), b: beta * (lambda - eta + xi).sin(), c },
        2 => SixVWeights {
            a: beta * ((lambda + 3.0 * eta - mu) / 2.0).sin(),
            b: beta * ((lambda - eta - mu) / 2.0).sin(),
            c,
        },
        3 => SixVWeights {
            a: beta * ((lambda + 3.0 * eta + mu) / 2.0 + xi).sin(),
            b: beta * ((lambda - eta + mu) / 2.0 + xi).sin(),
            c,
        },
        _ => panic!("sublattice must be 1, 2 or 3"),
    }
}

/// The seven class weights `ω₀..ω₆`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwentyVWeights {
    pub omega: [f64; 7],
}

impl TwentyVWeights {
    pub fn uniform() -> Self {
        TwentyVWeights { omega: [1.0; 7] }
    }

    /// `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: &[usize; 7]) -> Self {
        TwentyVWeights { omega: std::array::from_fn(|i| self.omega[perm[i]]) }
    }

    pub fn scaled(&self, c: f64) -> Self {
        TwentyVWeights { omega: self.omega.map(|w| w * c) }
    }

    /// Absolute values; equal partition functions on the DWBC triangles (sign gauge of ω₂, ω₅).
    pub fn gauge_positive(&self) -> Self {
        TwentyVWeights { omega: self.omega.map(f64::abs) }
    }
}

pub fn twenty_v_weights(p: &WeightParams) -> TwentyVWeights {
    twenty_v_weights_at(p, 0.0)
}

/// `ω_i[ξ]`: the weights with the vertical spectral parameter shifted by `e^{−2iξ}`.
pub fn twenty_v_weights_at(p: &WeightParams, xi: f64) -> TwentyVWeights {
    let WeightParams { eta, lambda, mu, nu } = *p;
    let s2e = (2.0 * eta).sin();
    let a1 = (lambda + eta + xi).sin();
    let b1 = (lambda - eta + xi).sin();
    let a2 = ((lambda + 3.0 * eta - mu) / 2.0).sin();
    let b2 = ((lambda - eta - mu) / 2.0).sin();
    let a3 = ((lambda + 3.0 * eta + mu) / 2.0 + xi).sin();
    let b3 = ((lambda - eta + mu) / 2.0 + xi).sin();
    TwentyVWeights {
        omega: [
            nu * a1 * a2 * a3,
            nu * b1 * a2 * b3,
            nu * s2e * b1 * a2,
            nu * s2e.powi(3) + nu * a1 * b3 * b2,
            nu * s2e * a3 * a2,
            nu * s2e * b1 * a3,
            nu * b1 * a3 * b2,
        ],
    }
}

fn checked_ratio(num: f64, den: f64, xi: f64, what: &'static str) -> Result<f64> {
    if den.abs() < POLE_TOL {
        Err(Error::Pole { xi, what })
    } else {
        Ok(num / den)
    }
}

/// `τ[ξ] = ω₁[ξ]ω₀[0] / (ω₀[ξ]ω₁[0])`.
pub fn tau_xi(p: &WeightParams, xi: f64) -> Result<f64> {
    let WeightParams { eta, lambda, mu, .. } = *p;
    let h3 = (lambda + 3.0 * eta + mu) / 2.0;
    let h1 = (lambda - eta + mu) / 2.0;
    let num = (xi + lambda - eta).sin() * (xi + h1).sin() * (lambda + eta).sin() * h3.sin();
    let den = (xi + lambda + eta).sin() * (xi + h3).sin() * (lambda - eta).sin() * h1.sin();
    checked_ratio(num, den, xi, "tau denominator")
}

/// `σ[ξ] = b₁[ξ]a₁[0] / (a₁[ξ]b₁[0])`.
pub fn sigma_xi(p: &WeightParams, xi: f64) -> Result<f64> {
    let WeightParams { eta, lambda, .. } = *p;
    let num = (xi + lambda - eta).sin() * (lambda + eta).sin();
    let den = (xi + lambda + eta).sin() * (lambda - eta).sin();
    checked_ratio(num, den, xi, "sigma denominator")
}

/// `γ[ξ] = ω₄[ξ]ω₂[0] / (ω₂[ξ]ω₄[0])`.
pub fn gamma_xi(p: &WeightParams, xi: f64) -> Result<f64> {
    let WeightParams { eta, lambda, mu, .. } = *p;
    let h3 = (lambda + 3.0 * eta + mu) / 2.0;
    let num = (lambda - eta).sin() * (xi + h3).sin();
    let den = (xi + lambda - eta).sin() * h3.sin();
    checked_ratio(num, den, xi, "gamma denominator")
}

/// Single-path transfer weights `α₁..α₆` (stored at indices 0..5).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathAlphas<T = f64> {
    pub alpha: [T; 6],
}

/// The α combinations over any field, so exact rationals work as well as floats.
pub fn path_alphas_generic<T>(omega: &[T; 7]) -> Option<PathAlphas<T>>
where
    T: num_traits::Num + Clone,
{
    let [w0, w1, w2, w3, w4, w5, w6] = omega.clone();
    if w0.is_zero() {
        return None;
    }
    let two = T::one() + T::one();
    let w02 = w0.clone() * w0.clone();
    let w03 = w02.clone() * w0.clone();
    let a1 = w1.clone() / w0.clone();
    let a2 = w6.clone() / w0.clone();
    let a3 = (w0.clone() * w3.clone() + w4.clone() * w4.clone() - w1.clone() * w6.clone()) / w02.clone();
    let a4 = (w2.clone() * w2.clone() - w1.clone() * w3.clone()) / w02.clone();
    let a5 = (w5.clone() * w5.clone() - w6.clone() * w3.clone()) / w02;
    let a6 = (two * w2.clone() * w4.clone() * w5.clone() + w1.clone() * w6.clone() * w3.clone()
        - w3 * w4.clone() * w4
        - w1 * w5.clone() * w5
        - w6 * w2.clone() * w2)
        / w03;
    Some(PathAlphas { alpha: [a1, a2, a3, a4, a5, a6] })
}

/// `path_alphas` over floats; fails when `ω₀ = 0`.
pub fn path_alphas(w: &TwentyVWeights) -> Result<PathAlphas> {
    path_alphas_generic(&w.omega).ok_or(Error::ZeroOmegaZero)
}

/// Spectral parameters of the trigonometric picture; all three are unit complex numbers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralParams {
    /// Argument of `z` (horizontal line).
    pub z_arg: f64,
    /// Argument of `t` (diagonal line).
    pub t_arg: f64,
    /// Argument of `w` (vertical line).
    pub w_arg: f64,
    /// Refinement shift, `w₁ = w e^{−2iξ}`.
    pub xi: f64,
}

impl SpectralParams {
    /// `z = e^{i(η+λ)}`, `w = e^{−i(η+λ)}`, `t = e^{iμ}`.
    pub fn homogeneous(p: &WeightParams) -> Self {
        SpectralParams { z_arg: p.eta + p.lambda, t_arg: p.mu, w_arg: -(p.eta + p.lambda), xi: 0.0 }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.z_arg)
    }

    pub fn t(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.t_arg)
    }

    /// The shifted vertical parameter `w e^{−2iξ}`.
    pub fn w(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.w_arg - 2.0 * self.xi)
    }
}

/// `√(uv)` for unit numbers given by their arguments, with one fixed branch.
pub fn unit_sqrt(arg_u: f64, arg_v: f64) -> Complex64 {
    Complex64::from_polar(1.0, (arg_u + arg_v) / 2.0)
}

/// 6V weights `(a, b, c)` of a crossing of a line with parameter `u` (the "first" line) and `v`.
/// `shift = 1` gives sublattice-1 form `(u − v, q⁻²u − q²v, (q²−q⁻²)√(uv))`;
/// `shift = 0` gives the sublattice-2/3 form `(qu − q⁻¹v, q⁻¹u − qv, (q²−q⁻²)√(uv))`.
pub fn spectral_abc(u_arg: f64, v_arg: f64, q_arg: f64, sublattice_one: bool) -> [Complex64; 3] {
    let u = Complex64::from_polar(1.0, u_arg);
    let v = Complex64::from_polar(1.0, v_arg);
    let q = Complex64::from_polar(1.0, q_arg);
    let q2 = q * q;
    let c = (q2 - q2.inv()) * unit_sqrt(u_arg, v_arg);
    if sublattice_one {
        [u - v, u / q2 - q2 * v, c]
    } else {
        [q * u - v / q, u / q - q * v, c]
    }
}

/// The seven 20V weights at one vertex from its three line parameters (normalization 1).
pub fn spectral_twenty_v(z_arg: f64, t_arg: f64, w_arg: f64, q_arg: f64) -> [Complex64; 7] {
    let [a1, b1, c1] = spectral_abc(z_arg, w_arg, q_arg, true);
    let [a2, b2, c2] = spectral_abc(z_arg, t_arg, q_arg, false);
    let [a3, b3, c3] = spectral_abc(t_arg, w_arg, q_arg, false);
    [
        a1 * a2 * a3,
        b1 * a2 * b3,
        b1 * a2 * c3,
        c1 * c2 * c3 + a1 * b2 * b3,
        c1 * a2 * a3,
        b1 * c2 * a3,
        b1 * b2 * a3,
    ]
}
