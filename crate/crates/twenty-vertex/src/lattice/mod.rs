//! The triangle `T_m`, osculating Schröder path configurations and their local data.
//!
//! Coordinates: the origin is the bottom-right vertex, and `T_m = {(x, y) : x ≤ 0, y ≤ m−1, x+y ≥ 0}`.
//! Paths take steps `H = (1,0)`, `D = (1,−1)` and `V = (0,−1)`. An edge is named by its tail and family.

mod picture;

use std::collections::BTreeMap;
use std::fmt;

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use picture::{Picture, Segment, Transform};

pub type Vertex = (i32, i32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    H = 0,
    D = 1,
    V = 2,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::H, Family::D, Family::V];

    pub fn step(self) -> (i32, i32) {
        match self {
            Family::H => (1, 0),
            Family::D => (1, -1),
            Family::V => (0, -1),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Standard family of an undirected unit segment, with its tail.
    pub fn of_segment(a: Vertex, b: Vertex) -> Option<(Family, Vertex)> {
        let (d0, d1) = (b.0 - a.0, b.1 - a.1);
        for f in Family::ALL {
            let s = f.step();
            if (d0, d1) == s {
                return Some((f, a));
            }
            if (-d0, -d1) == s {
                return Some((f, b));
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    #[serde(rename = "dwbc1")]
    Dwbc1,
    #[serde(rename = "dwbc2")]
    Dwbc2,
    #[serde(rename = "dwbc3")]
    Dwbc3,
}

impl BoundaryKind {
    pub const ALL: [BoundaryKind; 3] = [BoundaryKind::Dwbc1, BoundaryKind::Dwbc2, BoundaryKind::Dwbc3];

    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Dwbc1 => "dwbc1",
            BoundaryKind::Dwbc2 => "dwbc2",
            BoundaryKind::Dwbc3 => "dwbc3",
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BoundaryKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dwbc1" | "1" => Ok(BoundaryKind::Dwbc1),
            "dwbc2" | "2" => Ok(BoundaryKind::Dwbc2),
            "dwbc3" | "3" => Ok(BoundaryKind::Dwbc3),
            _ => Err(format!("unknown boundary condition `{s}`")),
        }
    }
}

/// `T_m` without boundary data.
pub fn contains(m: usize, (x, y): Vertex) -> bool {
    x <= 0 && y < m as i32 && x + y >= 0
}

/// Whether `(tail, family)` is an edge of `T_m`, internal or external.
pub fn edge_exists(m: usize, tail: Vertex, f: Family) -> bool {
    let (dx, dy) = f.step();
    contains(m, tail) || contains(m, (tail.0 + dx, tail.1 + dy))
}

/// Vertices in column-major order: columns left to right, each from top to bottom.
pub fn vertices(m: usize) -> impl Iterator<Item = Vertex> {
    let m = m as i32;
    (1 - m..=0).flat_map(move |x| (-x..m).rev().map(move |y| (x, y)))
}

/// Fixed occupancies of the external edges, keyed by `(tail, family)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData {
    pub m: usize,
    pub fixed: BTreeMap<(Vertex, Family), bool>,
}

impl BoundaryData {
    fn dwbc3(m: usize) -> Self {
        let mi = m as i32;
        let n = m.div_ceil(2) as i32;
        let mut fixed = BTreeMap::new();
        for x in 1 - mi..=0 {
            fixed.insert(((x - 1, mi), Family::D), false);
            fixed.insert(((x, mi), Family::V), false);
        }
        for y in 0..mi {
            fixed.insert(((0, y), Family::H), false);
            fixed.insert(((0, y), Family::D), false);
        }
        for y in 0..mi {
            let x = -y;
            let (inn, out) = if m.is_multiple_of(2) {
                (y >= n, y < n)
            } else {
                (y >= n - 1, y < n)
            };
            fixed.insert(((x - 1, y), Family::H), inn);
            fixed.insert(((x, y), Family::V), out);
        }
        BoundaryData { m, fixed }
    }

    fn from_picture(m: usize, pic: &Picture) -> Result<Self> {
        let mut fixed = BTreeMap::new();
        for (seg, &occ) in &pic.segments {
            let (f, tail) = Family::of_segment(seg.a, seg.b)
                .ok_or_else(|| Error::DomainMismatch("boundary segment outside the standard frame".into()))?;
            fixed.insert((tail, f), occ);
        }
        Ok(BoundaryData { m, fixed })
    }

    fn to_picture(&self) -> Picture {
        let segments = self
            .fixed
            .iter()
            .map(|(&(tail, f), &occ)| (Segment::of_edge(tail, f), occ))
            .collect();
        Picture { vertices: vertices(self.m).collect(), segments }
    }

    /// DWBC2 and DWBC1 are the images of DWBC3 under `S∘R∘VF` and then `R*`.
    pub fn new(m: usize, bc: BoundaryKind) -> Result<Self> {
        let b3 = Self::dwbc3(m);
        match bc {
            BoundaryKind::Dwbc3 => Ok(b3),
            BoundaryKind::Dwbc2 => Self::from_picture(m, &b3.to_picture().sr_vf(m)),
            BoundaryKind::Dwbc1 => Self::from_picture(m, &b3.to_picture().sr_vf(m).apply(Transform::Rstar, m)),
        }
    }

    pub fn get(&self, tail: Vertex, f: Family) -> Option<bool> {
        self.fixed.get(&(tail, f)).copied()
    }
}

/// `T_m` together with one of the three boundary conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleDomain {
    m: usize,
    bc: BoundaryKind,
    boundary: BoundaryData,
}

impl TriangleDomain {
    pub fn new(m: usize, bc: BoundaryKind) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidSize { m, reason: "the triangle needs m >= 1" });
        }
        if m > 64 {
            return Err(Error::InvalidSize { m, reason: "m above 64 is not supported" });
        }
        Ok(TriangleDomain { m, bc, boundary: BoundaryData::new(m, bc)? })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m.div_ceil(2)
    }

    pub fn bc(&self) -> BoundaryKind {
        self.bc
    }

    pub fn boundary(&self) -> &BoundaryData {
        &self.boundary
    }

    pub fn num_vertices(&self) -> usize {
        self.m * (self.m + 1) / 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        contains(self.m, v)
    }

    pub fn corners(&self) -> [Vertex; 3] {
        let m = self.m as i32;
        [(0, 0), (1 - m, m - 1), (0, m - 1)]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        vertices(self.m)
    }

    /// Fixed occupancy of an external in-edge of `v`, or `None` when the edge is internal.
    pub fn external_in(&self, v: Vertex, f: Family) -> Option<bool> {
        let (dx, dy) = f.step();
        self.boundary.get((v.0 - dx, v.1 - dy), f)
    }

    pub fn external_out(&self, v: Vertex, f: Family) -> Option<bool> {
        self.boundary.get(v, f)
    }
}

/// Weight class `0..=6` of a vertex environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexClass(pub u8);

/// Single-path classes indexed by (in family, out family).
const CLASS: [[u8; 3]; 3] = [
    // out H, D, V
    [6, 5, 4], // in H
    [5, 3, 2], // in D
    [4, 2, 1], // in V
];

/// Class of a local environment, or `None` when the ice rule fails.
pub fn class_of(ins: [bool; 3], outs: [bool; 3]) -> Option<u8> {
    let ni = ins.iter().filter(|&&b| b).count();
    let no = outs.iter().filter(|&&b| b).count();
    if ni != no {
        return None;
    }
    match ni {
        0 | 3 => Some(0),
        1 => {
            let i = ins.iter().position(|&b| b)?;
            let o = outs.iter().position(|&b| b)?;
            Some(CLASS[i][o])
        }
        _ => {
            let i = ins.iter().position(|&b| !b)?;
            let o = outs.iter().position(|&b| !b)?;
            Some(CLASS[i][o])
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    Horizontal,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseLabel {
    F0,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    Liquid,
}

impl PhaseLabel {
    /// Label of a set of saturated families when every family is either full or empty.
    pub fn from_saturated(h: bool, d: bool, v: bool) -> PhaseLabel {
        match (h, d, v) {
            (false, false, false) => PhaseLabel::F0,
            (true, false, false) => PhaseLabel::F1,
            (false, false, true) => PhaseLabel::F2,
            (true, true, false) => PhaseLabel::F3,
            (false, true, true) => PhaseLabel::F4,
            (true, true, true) => PhaseLabel::F5,
            (false, true, false) => PhaseLabel::F6,
            (true, false, true) => PhaseLabel::Liquid,
        }
    }

    /// Image under the total flip.
    pub fn flipped(self) -> PhaseLabel {
        use PhaseLabel::*;
        match self {
            F0 => F5,
            F5 => F0,
            F1 => F4,
            F4 => F1,
            F2 => F3,
            F3 => F2,
            F6 => Liquid,
            Liquid => Liquid,
        }
    }
}

/// Edge occupancies of the three families on `T_m`, stored densely by tail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PathConfig {
    m: usize,
    bits: [BitVec; 3],
}

impl fmt::Debug for PathConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PathConfig(m={}, occupied=[", self.m)?;
        let mut first = true;
        for (tail, fam) in self.edges() {
            if self.get(tail, fam) {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{fam:?}{tail:?}")?;
            }
        }
        write!(f, "])")
    }
}

impl PathConfig {
    /// All edges empty.
    pub fn empty(m: usize) -> Self {
        let side = m + 1;
        PathConfig { m, bits: std::array::from_fn(|_| bitvec![0; side * side]) }
    }

    /// Empty interior with the domain's fixed boundary occupancies.
    pub fn with_boundary(domain: &TriangleDomain) -> Self {
        let mut c = Self::empty(domain.m);
        for (&(tail, f), &occ) in &domain.boundary.fixed {
            c.set(tail, f, occ);
        }
        c
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn index(&self, tail: Vertex) -> usize {
        let gx = (tail.0 + self.m as i32) as usize;
        let gy = tail.1 as usize;
        gx * (self.m + 1) + gy
    }

    /// Occupancy of `(tail, family)`; false for non-edges.
    pub fn get(&self, tail: Vertex, f: Family) -> bool {
        edge_exists(self.m, tail, f) && self.bits[f.index()][self.index(tail)]
    }

    /// Panics if `(tail, family)` is not an edge of `T_m`.
    pub fn set(&mut self, tail: Vertex, f: Family, occupied: bool) {
        assert!(edge_exists(self.m, tail, f), "({tail:?}, {f:?}) is not an edge of T_{}", self.m);
        let i = self.index(tail);
        self.bits[f.index()].set(i, occupied);
    }

    /// All edges of `T_m` in canonical order: by family, then tail in column-major order.
    pub fn edges(&self) -> Vec<(Vertex, Family)> {
        edges(self.m)
    }

    pub fn ins(&self, v: Vertex) -> [bool; 3] {
        Family::ALL.map(|f| {
            let (dx, dy) = f.step();
            self.get((v.0 - dx, v.1 - dy), f)
        })
    }

    pub fn outs(&self, v: Vertex) -> [bool; 3] {
        Family::ALL.map(|f| self.get(v, f))
    }

    pub fn is_visited(&self, v: Vertex) -> bool {
        self.ins(v).iter().chain(self.outs(v).iter()).any(|&b| b)
    }

    pub fn classify_vertex(&self, v: Vertex) -> Result<VertexClass> {
        if !contains(self.m, v) {
            return Err(Error::OutOfDomain { x: v.0, y: v.1 });
        }
        let (ins, outs) = (self.ins(v), self.outs(v));
        class_of(ins, outs).map(VertexClass).ok_or_else(|| Error::IceRuleViolation {
            x: v.0,
            y: v.1,
            ins: ins.iter().filter(|&&b| b).count(),
            outs: outs.iter().filter(|&&b| b).count(),
        })
    }

    pub fn check_ice_rule(&self) -> Result<()> {
        for v in vertices(self.m) {
            self.classify_vertex(v)?;
        }
        Ok(())
    }

    /// Number of vertices of each class.
    pub fn class_counts(&self) -> Result<[usize; 7]> {
        let mut counts = [0; 7];
        for v in vertices(self.m) {
            counts[self.classify_vertex(v)?.0 as usize] += 1;
        }
        Ok(counts)
    }

    /// Which boundary condition the external edges match, if any.
    pub fn boundary_kind(&self) -> Option<BoundaryKind> {
        BoundaryKind::ALL.into_iter().find(|&bc| {
            BoundaryData::new(self.m, bc)
                .map(|b| b.fixed.iter().all(|(&(t, f), &occ)| self.get(t, f) == occ))
                .unwrap_or(false)
        })
    }

    /// Ice rule plus the boundary of `domain`.
    pub fn validate(&self, domain: &TriangleDomain) -> Result<()> {
        if self.m != domain.m {
            return Err(Error::DomainMismatch(format!("config has m = {}, domain m = {}", self.m, domain.m)));
        }
        for (&(t, f), &occ) in &domain.boundary.fixed {
            if self.get(t, f) != occ {
                return Err(Error::DomainMismatch(format!(
                    "external edge {f:?}{t:?} should be {}",
                    if occ { "occupied" } else { "empty" }
                )));
            }
        }
        self.check_ice_rule()
    }

    /// `k = y+1` of the topmost visited vertex of the last column (the DWBC2/DWBC3 statistic).
    pub fn first_hit_position(&self) -> Option<usize> {
        (0..self.m as i32).rev().find(|&y| self.is_visited((0, y))).map(|y| y as usize + 1)
    }

    /// Channel through which the first-hit vertex of the last column is entered.
    pub fn last_step_type(&self) -> Option<Channel> {
        let k = self.first_hit_position()?;
        let ins = self.ins((0, k as i32 - 1));
        if ins[Family::H.index()] {
            Some(Channel::Horizontal)
        } else if ins[Family::D.index()] {
            Some(Channel::Diagonal)
        } else {
            None
        }
    }

    /// Position from the left of the rightmost visited top-row vertex (the DWBC1 statistic).
    pub fn top_row_position(&self) -> Option<usize> {
        let m = self.m as i32;
        (1 - m..=0).rev().find(|&x| self.is_visited((x, m - 1))).map(|x| (x + m) as usize)
    }

    /// DWBC1 channel: the top path leaves the top row down (horizontal channel) or down-right (diagonal).
    pub fn top_row_channel(&self) -> Option<Channel> {
        let k = self.top_row_position()? as i32;
        let v = (k - self.m as i32, self.m as i32 - 1);
        let outs = self.outs(v);
        if outs[Family::V.index()] {
            Some(Channel::Horizontal)
        } else if outs[Family::D.index()] {
            Some(Channel::Diagonal)
        } else {
            None
        }
    }

    /// The refined statistic and channel appropriate for `bc`.
    pub fn refined_statistic(&self, bc: BoundaryKind) -> Option<(usize, Channel)> {
        match bc {
            BoundaryKind::Dwbc1 => Some((self.top_row_position()?, self.top_row_channel()?)),
            _ => Some((self.first_hit_position()?, self.last_step_type()?)),
        }
    }

    /// Label of the `window × window` block with top-left vertex `v`.
    pub fn phase_label(&self, v: Vertex, window: usize) -> Result<PhaseLabel> {
        if window < 1 {
            return Err(Error::InvalidSize { m: window, reason: "window must be at least 1" });
        }
        let w = window as i32;
        let mut all = [true; 3];
        let mut none = [true; 3];
        for i in 0..w {
            for j in 0..w {
                let u = (v.0 + i, v.1 - j);
                if !contains(self.m, u) {
                    return Err(Error::OutOfDomain { x: u.0, y: u.1 });
                }
                let (ins, outs) = (self.ins(u), self.outs(u));
                for f in 0..3 {
                    for b in [ins[f], outs[f]] {
                        all[f] &= b;
                        none[f] &= !b;
                    }
                }
            }
        }
        if (0..3).all(|f| all[f] || none[f]) {
            Ok(PhaseLabel::from_saturated(all[0], all[1], all[2]))
        } else {
            Ok(PhaseLabel::Liquid)
        }
    }

    /// The occupied-segment picture, external half-edges included.
    pub fn to_picture(&self) -> Picture {
        let segments = edges(self.m)
            .into_iter()
            .map(|(t, f)| (Segment::of_edge(t, f), self.get(t, f)))
            .collect();
        Picture { vertices: vertices(self.m).collect(), segments }
    }

    pub fn total_flip(&self) -> PathConfig {
        let mut c = self.clone();
        for (t, f) in edges(self.m) {
            c.set(t, f, !self.get(t, f));
        }
        c
    }

    /// `S∘R∘VF`: DWBC3 configurations to DWBC2 configurations.
    pub fn sr_vf(&self) -> Result<PathConfig> {
        self.to_picture().sr_vf(self.m).to_config(self.m)
    }

    /// `R*`: DWBC2 configurations to DWBC1 configurations.
    pub fn rstar(&self) -> Result<PathConfig> {
        self.to_picture().apply(Transform::Rstar, self.m).to_config(self.m)
    }

    /// `S̄∘R̄∘HF`: DWBC3 configurations to DWBC1 configurations.
    pub fn sbar_rbar_hf(&self) -> Result<PathConfig> {
        self.to_picture()
            .apply(Transform::HF, self.m)
            .apply(Transform::Rbar, self.m)
            .apply(Transform::Sbar, self.m)
            .to_config(self.m)
    }

    /// The paths as polylines, with osculating contacts resolved without crossings.
    ///
    /// Each path starts at the tail of an occupied external in-edge and ends at the head of an
    /// occupied external out-edge.
    pub fn paths(&self) -> Vec<Vec<Vertex>> {
        const IN_ORDER: [Family; 3] = [Family::V, Family::D, Family::H];
        const OUT_ORDER: [Family; 3] = [Family::H, Family::D, Family::V];
        let m = self.m;
        let mut starts: Vec<(Vertex, Family)> = edges(m)
            .into_iter()
            .filter(|&(t, f)| !contains(m, t) && self.get(t, f))
            .collect();
        starts.sort();
        let mut out = Vec::new();
        for (tail, f0) in starts {
            let mut poly = vec![tail];
            let mut fam = f0;
            let mut cur = tail;
            loop {
                let (dx, dy) = fam.step();
                let v = (cur.0 + dx, cur.1 + dy);
                poly.push(v);
                if !contains(m, v) {
                    break;
                }
                let ins = self.ins(v);
                let outs = self.outs(v);
                let rank = IN_ORDER.iter().filter(|g| ins[g.index()]).position(|&g| g == fam);
                let next = rank.and_then(|r| OUT_ORDER.iter().filter(|g| outs[g.index()]).nth(r).copied());
                match next {
                    Some(g) => {
                        fam = g;
                        cur = v;
                    }
                    None => break,
                }
            }
            out.push(poly);
        }
        out
    }
}

/// Canonical edge list of `T_m`.
pub fn edges(m: usize) -> Vec<(Vertex, Family)> {
    let mi = m as i32;
    let mut out = Vec::new();
    for f in Family::ALL {
        for x in -mi..=0 {
            for y in (0..=mi).rev() {
                if edge_exists(m, (x, y), f) {
                    out.push(((x, y), f));
                }
            }
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PathConfigJson {
    schema: u32,
    m: usize,
    h: Vec<u8>,
    d: Vec<u8>,
    v: Vec<u8>,
}

/// JSON schema 1: `{schema, m, h, d, v}`, each array listing 0/1 for the edges of that family
/// in canonical order (tail column left to right, then top to bottom).
impl Serialize for PathConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut arrs: [Vec<u8>; 3] = Default::default();
        for (t, f) in edges(self.m) {
            arrs[f.index()].push(self.get(t, f) as u8);
        }
        let [h, d, v] = arrs;
        PathConfigJson { schema: 1, m: self.m, h, d, v }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PathConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PathConfigJson::deserialize(d)?;
        if j.schema != 1 {
            return Err(D::Error::custom(format!("unsupported schema {}", j.schema)));
        }
        let mut c = PathConfig::empty(j.m);
        let arrs = [j.h, j.d, j.v];
        let mut pos = [0usize; 3];
        for (t, f) in edges(j.m) {
            let i = f.index();
            let bit = *arrs[i].get(pos[i]).ok_or_else(|| D::Error::custom("edge array too short"))?;
            pos[i] += 1;
            c.set(t, f, bit != 0);
        }
        if (0..3).any(|i| pos[i] != arrs[i].len()) {
            return Err(D::Error::custom("edge array too long"));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_table_covers_twenty_environments_with_seven_classes() {
        let mut seen = std::collections::BTreeSet::new();
        let mut valid = 0;
        for bits in 0..64u32 {
            let ins = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
            let outs = [bits & 8 != 0, bits & 16 != 0, bits & 32 != 0];
            if let Some(c) = class_of(ins, outs) {
                valid += 1;
                seen.insert(c);
            }
        }
        assert_eq!(valid, 20);
        assert_eq!(seen.len(), 7);
    }

    #[test]
    fn named_environments() {
        assert_eq!(class_of([false; 3], [false; 3]), Some(0));
        assert_eq!(class_of([false, false, true], [false, false, true]), Some(1));
        assert_eq!(class_of([true, false, false], [true, false, false]), Some(6));
        assert_eq!(class_of([true; 3], [true; 3]), Some(0));
        assert_eq!(class_of([true, false, false], [false; 3]), None);
    }

    #[test]
    fn dwbc3_boundary_counts() {
        for m in 1..=9 {
            let d = TriangleDomain::new(m, BoundaryKind::Dwbc3).unwrap();
            let ins = d.boundary().fixed.iter().filter(|(&(t, _), &o)| o && !contains(m, t)).count();
            let outs = d.boundary().fixed.iter().filter(|(&(t, _), &o)| o && contains(m, t)).count();
            assert_eq!(ins, outs, "m={m}");
            assert_eq!(ins, m / 2 + m % 2);
            assert_eq!(d.boundary().fixed.len(), 6 * m);
        }
    }

    #[test]
    fn odd_center_has_one_in_and_one_out() {
        let d = TriangleDomain::new(5, BoundaryKind::Dwbc3).unwrap();
        let c = (-2, 2);
        assert_eq!(d.external_in(c, Family::H), Some(true));
        assert_eq!(d.external_out(c, Family::V), Some(true));
    }

    #[test]
    fn other_boundaries_are_balanced() {
        for m in 1..=8 {
            for bc in BoundaryKind::ALL {
                let d = TriangleDomain::new(m, bc).unwrap();
                assert_eq!(d.boundary().fixed.len(), 6 * m);
                let ins = d.boundary().fixed.iter().filter(|(&(t, _), &o)| o && !contains(m, t)).count();
                let outs = d.boundary().fixed.iter().filter(|(&(t, _), &o)| o && contains(m, t)).count();
                assert_eq!(ins, outs, "m={m} {bc}");
            }
        }
    }

    #[test]
    fn zero_size_rejected() {
        assert!(matches!(TriangleDomain::new(0, BoundaryKind::Dwbc3), Err(Error::InvalidSize { .. })));
    }

    #[test]
    fn vertex_order_and_count() {
        let v: Vec<_> = vertices(3).collect();
        assert_eq!(v, vec![(-2, 2), (-1, 2), (-1, 1), (0, 2), (0, 1), (0, 0)]);
    }

    #[test]
    fn json_round_trip() {
        let d = TriangleDomain::new(4, BoundaryKind::Dwbc2).unwrap();
        let c = PathConfig::with_boundary(&d);
        let s = serde_json::to_string(&c).unwrap();
        let back: PathConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
