//! Configurations as undirected occupied segments, so that reflections and shears can be applied
//! before the result is read back in the standard step frame.

use std::collections::{BTreeMap, BTreeSet};

use super::{edge_exists, edges, Family, PathConfig, Vertex};
use crate::error::{Error, Result};

/// An undirected unit segment with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub a: Vertex,
    pub b: Vertex,
}

impl Segment {
    pub fn new(p: Vertex, q: Vertex) -> Self {
        if p <= q {
            Segment { a: p, b: q }
        } else {
            Segment { a: q, b: p }
        }
    }

    pub fn of_edge(tail: Vertex, f: Family) -> Self {
        let (dx, dy) = f.step();
        Segment::new(tail, (tail.0 + dx, tail.1 + dy))
    }

    pub fn is_vertical(&self) -> bool {
        self.a.0 == self.b.0
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.1 == self.b.1
    }

    fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        Segment::new(f(self.a), f(self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    /// Complement every vertical segment.
    VF,
    /// Complement every horizontal segment.
    HF,
    /// `(x, y) ↦ (x, −y)`.
    R,
    /// `(x, y) ↦ (−x, y)`.
    Rbar,
    /// `(x, y) ↦ (x, y − x + m − 1)`, the shear following `R`.
    S,
    /// `(x, y) ↦ (x − y, y)`, the shear following `R̄`.
    Sbar,
    /// `(x, y) ↦ (y − m + 1, x + m − 1)`, the reflection across the NW–SE axis of `T_m`.
    Rstar,
    /// Complement every segment.
    TotalFlip,
}

/// A vertex set with an occupancy bit on each of its segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Picture {
    pub vertices: BTreeSet<Vertex>,
    pub segments: BTreeMap<Segment, bool>,
}

impl Picture {
    pub fn apply(&self, t: Transform, m: usize) -> Picture {
        let mi = m as i32;
        let point: Option<Box<dyn Fn(Vertex) -> Vertex>> = match t {
            Transform::R => Some(Box::new(|(x, y)| (x, -y))),
            Transform::Rbar => Some(Box::new(|(x, y)| (-x, y))),
            Transform::S => Some(Box::new(move |(x, y)| (x, y - x + mi - 1))),
            Transform::Sbar => Some(Box::new(|(x, y)| (x - y, y))),
            Transform::Rstar => Some(Box::new(move |(x, y)| (y - mi + 1, x + mi - 1))),
            _ => None,
        };
        match point {
            Some(p) => Picture {
                vertices: self.vertices.iter().map(|&v| p(v)).collect(),
                segments: self.segments.iter().map(|(s, &o)| (s.map(&p), o)).collect(),
            },
            None => {
                let flip = |s: &Segment| match t {
                    Transform::VF => s.is_vertical(),
                    Transform::HF => s.is_horizontal(),
                    _ => true,
                };
                Picture {
                    vertices: self.vertices.clone(),
                    segments: self.segments.iter().map(|(s, &o)| (*s, o ^ flip(s))).collect(),
                }
            }
        }
    }

    /// `S∘R∘VF`.
    pub fn sr_vf(&self, m: usize) -> Picture {
        self.apply(Transform::VF, m).apply(Transform::R, m).apply(Transform::S, m)
    }

    /// Read back as a standard-frame configuration on `T_m`.
    pub fn to_config(&self, m: usize) -> Result<PathConfig> {
        let expected: BTreeSet<Vertex> = super::vertices(m).collect();
        if self.vertices != expected {
            return Err(Error::DomainMismatch(format!("vertex set is not T_{m}")));
        }
        let mut c = PathConfig::empty(m);
        let mut count = 0;
        for (s, &occ) in &self.segments {
            let (f, tail) = Family::of_segment(s.a, s.b)
                .ok_or_else(|| Error::DomainMismatch(format!("segment {s:?} is not a standard step")))?;
            if !edge_exists(m, tail, f) {
                return Err(Error::DomainMismatch(format!("segment {s:?} does not touch T_{m}")));
            }
            c.set(tail, f, occ);
            count += 1;
        }
        if count != edges(m).len() {
            return Err(Error::DomainMismatch("edge set is not that of T_m".into()));
        }
        Ok(c)
    }
}
