//! Exact counting, weighted partition functions, refined statistics and exact sampling.

mod brute;
mod inhom;
mod sample;
mod transfer;

use std::ops::{AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::{BoundaryKind, Channel, PathConfig, TriangleDomain, Vertex};
use crate::poly::RefinedPoly;
use crate::weights::TwentyVWeights;

pub use brute::for_each_config;
pub use inhom::{inhom_lhs, inhom_rhs, verify_inhom_relation, InhomSpectral, INHOM_MAX_M};
pub use sample::{sample_exact, Sampler};
pub use transfer::{column_marginal, column_marginal_brute, cut_state, ColumnState};

/// Anything that can be summed and multiplied: counts, rationals, floats, complex numbers.
pub trait Weight: Clone + Zero + One + for<'a> AddAssign<&'a Self> + Mul<Output = Self> + Send + Sync {}

impl<T> Weight for T where T: Clone + Zero + One + for<'a> AddAssign<&'a T> + Mul<Output = T> + Send + Sync {}

/// Totals and refined counts, with the refined counts split by entry channel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub m: usize,
    pub bc: BoundaryKind,
    #[serde(with = "big_dec")]
    pub total: BigUint,
    #[serde(with = "big_dec_vec")]
    pub refined: Vec<BigUint>,
    #[serde(rename = "refinedSplit")]
    pub refined_split: RefinedSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedSplit {
    #[serde(rename = "H", with = "big_dec_vec")]
    pub horizontal: Vec<BigUint>,
    #[serde(rename = "D", with = "big_dec_vec")]
    pub diagonal: Vec<BigUint>,
}

impl CountResult {
    fn from_tagged(domain: &TriangleDomain, tagged: Vec<((usize, Channel), BigUint)>) -> Self {
        let m = domain.m();
        let mut h = vec![BigUint::zero(); m];
        let mut d = vec![BigUint::zero(); m];
        for ((k, ch), c) in tagged {
            match ch {
                Channel::Horizontal => h[k - 1] += c,
                Channel::Diagonal => d[k - 1] += c,
            }
        }
        let refined: Vec<BigUint> = h.iter().zip(&d).map(|(a, b)| a + b).collect();
        let total = refined.iter().sum();
        CountResult { m, bc: domain.bc(), total, refined, refined_split: RefinedSplit { horizontal: h, diagonal: d } }
    }

    /// `Σ_k Z_{m,k} τ^{k−1}`.
    pub fn refined_poly(&self) -> RefinedPoly<BigUint> {
        RefinedPoly::new(self.refined.clone())
    }
}

/// Per-vertex weights: class weights at every vertex, or a function of the vertex.
pub fn homogeneous<W: Weight>(w: [W; 7]) -> impl Fn(Vertex, u8) -> W + Sync {
    move |_, c| w[c as usize].clone()
}

/// Exhaustive enumeration.
pub fn count_brute(domain: &TriangleDomain, caps: &Caps) -> Result<CountResult> {
    Caps::check("brute-force", domain.m(), caps.brute)?;
    let mut tagged: std::collections::BTreeMap<(usize, u8), BigUint> = Default::default();
    let bc = domain.bc();
    let mut bad = None;
    for_each_config(domain, |c| match c.refined_statistic(bc) {
        Some((k, ch)) => *tagged.entry((k, ch as u8)).or_default() += 1u32,
        None => bad = Some(()),
    });
    if bad.is_some() {
        return Err(Error::DomainMismatch("a configuration has no refined statistic".into()));
    }
    let tagged = tagged
        .into_iter()
        .map(|((k, ch), c)| ((k, if ch == 0 { Channel::Horizontal } else { Channel::Diagonal }), c))
        .collect();
    Ok(CountResult::from_tagged(domain, tagged))
}

/// Column transfer matrix.
pub fn count_transfer(domain: &TriangleDomain, caps: &Caps) -> Result<CountResult> {
    Caps::check("transfer", domain.m(), caps.transfer)?;
    let tagged = transfer::tagged_sum(domain, &homogeneous(std::array::from_fn(|_| BigUint::one())))?;
    Ok(CountResult::from_tagged(domain, tagged))
}

/// `Σ_configs Π_v w(v, class(v))` by the transfer matrix.
pub fn partition_function<W: Weight, F>(domain: &TriangleDomain, weight: &F, caps: &Caps) -> Result<W>
where
    F: Fn(Vertex, u8) -> W + Sync,
{
    Caps::check("transfer", domain.m(), caps.transfer)?;
    transfer::total(domain, weight)
}

/// The same sum by enumeration.
pub fn partition_function_brute<W: Weight, F>(domain: &TriangleDomain, weight: &F, caps: &Caps) -> Result<W>
where
    F: Fn(Vertex, u8) -> W,
{
    Caps::check("brute-force", domain.m(), caps.brute)?;
    let mut acc = W::zero();
    let mut err = None;
    for_each_config(domain, |c| {
        let mut p = W::one();
        for v in domain.vertices() {
            match c.classify_vertex(v) {
                Ok(cl) => p = p * weight(v, cl.0),
                Err(e) => err = Some(e),
            }
        }
        acc += &p;
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// `Σ_k (Z^D_k + γ Z^H_k) τ^{k−1}` with weighted channels.
pub fn refined_poly<W: Weight + PartialEq, F>(
    domain: &TriangleDomain,
    weight: &F,
    gamma: &W,
    caps: &Caps,
) -> Result<RefinedPoly<W>>
where
    F: Fn(Vertex, u8) -> W + Sync,
{
    Caps::check("transfer", domain.m(), caps.transfer)?;
    let tagged = transfer::tagged_sum(domain, weight)?;
    let mut coeffs = vec![W::zero(); domain.m()];
    for ((k, ch), w) in tagged {
        let term = match ch {
            Channel::Horizontal => gamma.clone() * w,
            Channel::Diagonal => w,
        };
        coeffs[k - 1] += &term;
    }
    Ok(RefinedPoly::new(coeffs))
}

/// `H_{m,k} = (ω₀/ω₁)^{k−1} Z_{m,k} / Z_m` for homogeneous weights.
pub fn one_point(domain: &TriangleDomain, weights: &TwentyVWeights, k: usize, caps: &Caps) -> Result<f64> {
    let m = domain.m();
    if k < 1 || k > m {
        return Err(Error::IndexOutOfRange { index: k, max: m });
    }
    let w = weights.omega;
    if w[0] == 0.0 {
        return Err(Error::ZeroOmegaZero);
    }
    let poly = refined_poly(domain, &homogeneous(w), &1.0, caps)?;
    let z: f64 = poly.total();
    let zk = poly.coeff(k - 1);
    let h = (w[0] / w[1]).powi(k as i32 - 1) * zk / z;
    if h.is_finite() {
        Ok(h)
    } else {
        Err(Error::NonFiniteValue("one-point function"))
    }
}

/// Every configuration of the domain, in DFS order.
pub fn all_configs(domain: &TriangleDomain, caps: &Caps) -> Result<Vec<PathConfig>> {
    Caps::check("brute-force", domain.m(), caps.brute)?;
    let mut out = Vec::new();
    for_each_config(domain, |c| out.push(c.clone()));
    Ok(out)
}

mod big_dec {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod big_dec_vec {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}
