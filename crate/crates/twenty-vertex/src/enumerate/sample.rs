use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::transfer::{Engine, Track};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::{Family, PathConfig, TriangleDomain, Vertex};

/// Exact Boltzmann sampler: backward partial sums of the transfer sweep, then cell-by-cell
/// forward choices.
pub struct Sampler<'a> {
    engine: Engine<'a>,
    weights: Vec<[f64; 7]>,
    back: Vec<std::collections::HashMap<u64, f64>>,
}

impl<'a> Sampler<'a> {
    pub fn new<F: Fn(Vertex, u8) -> f64>(domain: &'a TriangleDomain, weight: &F, caps: &Caps) -> Result<Self> {
        Caps::check("transfer", domain.m(), caps.transfer)?;
        let engine = Engine::new(domain, Track::None)?;
        let layers = engine.reachable();
        let back = engine.backward(&layers, weight);
        if back[0].get(&0).is_none_or(|&z| !(z > 0.0) || !z.is_finite()) {
            return Err(Error::NonFiniteValue("partition function is not a positive finite number"));
        }
        let weights = engine.order.iter().map(|&v| std::array::from_fn(|c| weight(v, c as u8))).collect();
        Ok(Sampler { engine, weights, back })
    }

    /// Uniform weights.
    pub fn uniform(domain: &'a TriangleDomain, caps: &Caps) -> Result<Self> {
        Self::new(domain, &|_, _| 1.0, caps)
    }

    pub fn partition_function(&self) -> f64 {
        self.back[0][&0]
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> PathConfig {
        let e = &self.engine;
        let mut c = PathConfig::with_boundary(e.domain);
        let mut s = 0u64;
        let mut buf = Vec::with_capacity(8);
        for i in 0..e.order.len() {
            e.moves(i, s, &mut buf);
            let probs: Vec<f64> = buf
                .iter()
                .map(|mv| self.weights[i][mv.class as usize] * self.back[i + 1].get(&mv.next).copied().unwrap_or(0.0))
                .collect();
            let tot: f64 = probs.iter().sum();
            let mut r = rng.random::<f64>() * tot;
            let mut pick = probs.iter().rposition(|&p| p > 0.0).expect("state with no completion");
            for (j, &p) in probs.iter().enumerate() {
                if p > 0.0 && r < p {
                    pick = j;
                    break;
                }
                r -= p;
            }
            let mv = buf[pick];
            let v = e.order[i];
            for (j, f) in Family::ALL.into_iter().enumerate() {
                if e.domain.external_out(v, f).is_none() {
                    c.set(v, f, mv.outs[j]);
                }
            }
            s = mv.next;
        }
        c
    }

    /// `count` independent draws from a seeded ChaCha8 stream.
    pub fn sample_many(&self, seed: u64, count: usize) -> Vec<PathConfig> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample(&mut rng)).collect()
    }
}

/// One exact draw; deterministic in `seed`.
pub fn sample_exact<F: Fn(Vertex, u8) -> f64>(
    domain: &TriangleDomain,
    weight: &F,
    seed: u64,
    caps: &Caps,
) -> Result<PathConfig> {
    let s = Sampler::new(domain, weight, caps)?;
    Ok(s.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}
