//! The inhomogeneous 20V partition function on `T_m` against its factorized 6V form.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::partition_function_brute;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact6v::brute_6v_dwbc;
use crate::lattice::{BoundaryKind, TriangleDomain};
use crate::weights::{spectral_abc, spectral_twenty_v};

/// Line parameters as arguments of unit complex numbers: `z_i` on the horizontal line
/// `y = m−i`, `t_j` on the diagonal `x+y = m−j`, `w_k` on the vertical `x = 1−k`; `q = e^{iη}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InhomSpectral {
    pub eta: f64,
    pub z: Vec<f64>,
    pub t: Vec<f64>,
    pub w: Vec<f64>,
}

impl InhomSpectral {
    /// Uniformly random arguments in `[0, 2π)` and `η ∈ [0.1, 0.7]`.
    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |n: usize| (0..n).map(|_| rng.random::<f64>() * std::f64::consts::TAU).collect::<Vec<_>>();
        let z = draw(m);
        let t = draw(m);
        let w = draw(m);
        let eta = 0.1 + 0.6 * rng.random::<f64>();
        InhomSpectral { eta, z, t, w }
    }

    fn check(&self, m: usize) -> Result<()> {
        if self.z.len() != m || self.t.len() != m || self.w.len() != m {
            return Err(Error::DegenerateSpectral("need exactly m parameters per line family"));
        }
        Ok(())
    }
}

const DEGENERATE: f64 = 1e-12;

/// Brute-force inhomogeneous 20V partition function with DWBC3.
pub fn inhom_lhs(m: usize, sp: &InhomSpectral) -> Result<Complex64> {
    sp.check(m)?;
    let domain = TriangleDomain::new(m, BoundaryKind::Dwbc3)?;
    let mi = m as i32;
    let weight = |(x, y): (i32, i32), c: u8| {
        let i = (mi - y) as usize;
        let j = (mi - x - y) as usize;
        let k = (1 - x) as usize;
        spectral_twenty_v(sp.z[i - 1], sp.t[j - 1], sp.w[k - 1], sp.eta)[c as usize]
    };
    partition_function_brute(&domain, &weight, &Caps { brute: 4, ..Caps::default() })
}

/// Product of the `a₂`, `a₃`, `b₁` factors times the `n×n` inhomogeneous 6V-DWBC partition function.
pub fn inhom_rhs(m: usize, sp: &InhomSpectral) -> Result<Complex64> {
    sp.check(m)?;
    let n = m.div_ceil(2);
    let q = sp.eta;
    let mut p = Complex64::new(1.0, 0.0);
    let mut mul = |f: Complex64| -> Result<()> {
        if f.norm() < DEGENERATE {
            return Err(Error::DegenerateSpectral("a prefactor weight vanishes"));
        }
        p *= f;
        Ok(())
    };
    for i in 1..=m {
        for j in i..=m {
            mul(spectral_abc(sp.z[i - 1], sp.t[j - 1], q, false)[0])?;
        }
    }
    // vertical line k meets diagonal line j exactly when k <= j
    for j in 1..=m {
        for k in 1..=j {
            mul(spectral_abc(sp.t[j - 1], sp.w[k - 1], q, false)[0])?;
        }
    }
    for i in 1..=m {
        for k in 1..=m {
            if i + k <= m + 1 && !(i <= n && k <= n) {
                mul(spectral_abc(sp.z[i - 1], sp.w[k - 1], q, true)[1])?;
            }
        }
    }
    let cell = |row: usize, col: usize| {
        let [a, b, c] = spectral_abc(sp.z[row], sp.w[n - 1 - col], q, true);
        (a, b, c)
    };
    let z6 = brute_6v_dwbc(n, &cell)?;
    Ok(p * z6)
}

/// Largest size [`verify_inhom_relation`] accepts.
pub const INHOM_MAX_M: usize = 4;

/// `|LHS − RHS| / |LHS|`.
pub fn verify_inhom_relation(m: usize, sp: &InhomSpectral) -> Result<f64> {
    if !(1..=INHOM_MAX_M).contains(&m) {
        return Err(Error::SizeCapExceeded { route: "inhomogeneous check", m, cap: INHOM_MAX_M });
    }
    let l = inhom_lhs(m, sp)?;
    let r = inhom_rhs(m, sp)?;
    if l.norm() < DEGENERATE {
        return Err(Error::DegenerateSpectral("the 20V partition function vanishes"));
    }
    let res = (l - r).norm() / l.norm();
    if res.is_finite() {
        Ok(res)
    } else {
        Err(Error::NonFiniteValue("inhomogeneous residual"))
    }
}
