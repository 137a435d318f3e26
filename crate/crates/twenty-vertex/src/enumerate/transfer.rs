//! Column-by-column transfer matrix with cell-by-cell updates.
//!
//! State layout (one `u64`): bits `0..m` hold the horizontal edges crossing the cut, bits
//! `m..2m` the diagonal ones, then a carry bit for the diagonal step leaving the previous cell,
//! a bit for the vertical step entering the next cell, and finally an optional tag recording
//! the refined statistic `k` and its channel.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{for_each_config, Weight};
use crate::error::{Error, Result};
use crate::lattice::{class_of, BoundaryKind, Channel, Family, PathConfig, TriangleDomain, Vertex};

/// The horizontal and diagonal edges crossing a vertical cut, as a bitmask.
pub type ColumnState = u64;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Track {
    None,
    /// Topmost visited vertex of the last column.
    FirstHit,
    /// Rightmost visited vertex of the top row.
    TopRow,
}

pub(crate) struct Engine<'a> {
    pub domain: &'a TriangleDomain,
    pub order: Vec<Vertex>,
    m: usize,
    track: Track,
    fixed_in: Vec<[Option<bool>; 3]>,
    fixed_out: Vec<[Option<bool>; 3]>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Move {
    pub outs: [bool; 3],
    pub class: u8,
    pub next: u64,
}

impl<'a> Engine<'a> {
    pub fn new(domain: &'a TriangleDomain, track: Track) -> Result<Self> {
        let m = domain.m();
        if 2 * m + 10 > 64 {
            return Err(Error::InvalidSize { m, reason: "transfer states are limited to m <= 27" });
        }
        let order: Vec<Vertex> = domain.vertices().collect();
        let fixed_in = order.iter().map(|&v| Family::ALL.map(|f| domain.external_in(v, f))).collect();
        let fixed_out = order.iter().map(|&v| Family::ALL.map(|f| domain.external_out(v, f))).collect();
        Ok(Engine { domain, order, m, track, fixed_in, fixed_out })
    }

    pub fn track_for(bc: BoundaryKind) -> Track {
        match bc {
            BoundaryKind::Dwbc1 => Track::TopRow,
            _ => Track::FirstHit,
        }
    }

    fn carry_bit(&self) -> u32 {
        2 * self.m as u32
    }

    fn v_bit(&self) -> u32 {
        2 * self.m as u32 + 1
    }

    fn tag_shift(&self) -> u32 {
        2 * self.m as u32 + 2
    }

    /// `(k, channel code)` with code 0 = unset, 1 = horizontal, 2 = diagonal.
    pub fn tag(&self, s: u64) -> (usize, u8) {
        let t = s >> self.tag_shift();
        ((t & 0x3f) as usize, ((t >> 6) & 3) as u8)
    }

    fn with_tag(&self, s: u64, k: usize, ch: u8) -> u64 {
        let mask = !(0xffu64 << self.tag_shift());
        (s & mask) | (((k as u64) | ((ch as u64) << 6)) << self.tag_shift())
    }

    /// Drops the tag and the intra-column bits.
    pub fn cut_key(&self, s: u64) -> ColumnState {
        s & ((1u64 << (2 * self.m)) - 1)
    }

    /// All legal moves at cell `i` from state `s`.
    pub fn moves(&self, i: usize, s: u64, out: &mut Vec<Move>) {
        out.clear();
        let (x, y) = self.order[i];
        let m = self.m as i32;
        let yu = y as u32;
        let mu = self.m as u32;
        let bit = |b: u32| (s >> b) & 1 == 1;
        let top = y == m - 1;
        let bottom = x + y == 0;
        let fin = self.fixed_in[i];
        let ins = [
            fin[0].unwrap_or_else(|| bit(yu)),
            fin[1].unwrap_or_else(|| bit(mu + yu)),
            fin[2].unwrap_or_else(|| bit(self.v_bit())),
        ];
        let need = ins.iter().filter(|&&b| b).count() as u32;
        let fout = self.fixed_out[i];
        let carry_in = !top && bit(self.carry_bit());
        for bits in 0u8..8 {
            if bits.count_ones() != need {
                continue;
            }
            let outs = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
            if (0..3).any(|j| fout[j].is_some_and(|f| f != outs[j])) {
                continue;
            }
            let Some(class) = class_of(ins, outs) else { continue };
            let mut n = s;
            let setb = |n: &mut u64, b: u32, val: bool| {
                if val {
                    *n |= 1 << b
                } else {
                    *n &= !(1 << b)
                }
            };
            setb(&mut n, yu, x < 0 && outs[0]);
            setb(&mut n, mu + yu, x < 0 && carry_in);
            setb(&mut n, self.carry_bit(), outs[1]);
            setb(&mut n, self.v_bit(), outs[2]);
            if bottom {
                if x < 0 {
                    setb(&mut n, mu + yu - 1, outs[1]);
                }
                setb(&mut n, self.carry_bit(), false);
                setb(&mut n, self.v_bit(), false);
            }
            let visited = ins.iter().chain(outs.iter()).any(|&b| b);
            match self.track {
                Track::None => {}
                Track::FirstHit => {
                    let (k, _) = self.tag(n);
                    if x == 0 && k == 0 && visited {
                        let ch = if ins[0] {
                            1
                        } else if ins[1] {
                            2
                        } else {
                            0
                        };
                        n = self.with_tag(n, (y + 1) as usize, ch);
                    }
                }
                Track::TopRow => {
                    if top && visited {
                        let ch = if outs[2] {
                            1
                        } else if outs[1] {
                            2
                        } else {
                            0
                        };
                        n = self.with_tag(n, (x + m) as usize, ch);
                    }
                }
            }
            out.push(Move { outs, class, next: n });
        }
    }

    /// Forward sweep keeping only the final layer.
    pub fn sweep<W: Weight, F: Fn(Vertex, u8) -> W>(&self, weight: &F) -> HashMap<u64, W> {
        let mut layer: HashMap<u64, W> = HashMap::new();
        layer.insert(0, W::one());
        let mut buf = Vec::with_capacity(8);
        for i in 0..self.order.len() {
            let v = self.order[i];
            let mut next: HashMap<u64, W> = HashMap::with_capacity(layer.len() * 2);
            let wt: [W; 7] = std::array::from_fn(|c| weight(v, c as u8));
            for (s, w) in layer {
                self.moves(i, s, &mut buf);
                for mv in &buf {
                    let c = wt[mv.class as usize].clone();
                    if c.is_zero() {
                        continue;
                    }
                    let add = w.clone() * c;
                    next.entry(mv.next).and_modify(|e| *e += &add).or_insert(add);
                }
            }
            layer = next;
        }
        layer
    }

    /// Reachable state sets after each cell; `layers[i]` is the input of cell `i`.
    pub fn reachable(&self) -> Vec<Vec<u64>> {
        let mut layers = vec![vec![0u64]];
        let mut buf = Vec::with_capacity(8);
        for i in 0..self.order.len() {
            let mut next: Vec<u64> = Vec::new();
            for &s in &layers[i] {
                self.moves(i, s, &mut buf);
                next.extend(buf.iter().map(|mv| mv.next));
            }
            next.sort_unstable();
            next.dedup();
            layers.push(next);
        }
        layers
    }

    /// `back[i][s]`: weighted number of completions from state `s` before cell `i`.
    pub fn backward<W: Weight, F: Fn(Vertex, u8) -> W>(&self, layers: &[Vec<u64>], weight: &F) -> Vec<HashMap<u64, W>> {
        let n = self.order.len();
        let mut back: Vec<HashMap<u64, W>> = vec![HashMap::new(); n + 1];
        for &s in &layers[n] {
            back[n].insert(s, W::one());
        }
        let mut buf = Vec::with_capacity(8);
        for i in (0..n).rev() {
            let v = self.order[i];
            let wt: [W; 7] = std::array::from_fn(|c| weight(v, c as u8));
            let mut cur = HashMap::with_capacity(layers[i].len());
            for &s in &layers[i] {
                self.moves(i, s, &mut buf);
                let mut acc = W::zero();
                for mv in &buf {
                    if let Some(b) = back[i + 1].get(&mv.next) {
                        acc += &(wt[mv.class as usize].clone() * b.clone());
                    }
                }
                if !acc.is_zero() {
                    cur.insert(s, acc);
                }
            }
            back[i] = cur;
        }
        back
    }
}

pub(crate) fn tagged_sum<W: Weight, F: Fn(Vertex, u8) -> W>(
    domain: &TriangleDomain,
    weight: &F,
) -> Result<Vec<((usize, Channel), W)>> {
    let e = Engine::new(domain, Engine::track_for(domain.bc()))?;
    let fin = e.sweep(weight);
    let mut acc: BTreeMap<(usize, u8), W> = BTreeMap::new();
    for (s, w) in fin {
        let (k, ch) = e.tag(s);
        if k == 0 || ch == 0 {
            return Err(Error::DomainMismatch("a configuration has no refined statistic".into()));
        }
        acc.entry((k, ch)).and_modify(|a| *a += &w).or_insert(w);
    }
    Ok(acc
        .into_iter()
        .map(|((k, ch), w)| ((k, if ch == 1 { Channel::Horizontal } else { Channel::Diagonal }), w))
        .collect())
}

pub(crate) fn total<W: Weight, F: Fn(Vertex, u8) -> W>(domain: &TriangleDomain, weight: &F) -> Result<W> {
    let e = Engine::new(domain, Track::None)?;
    let mut acc = W::zero();
    for (_, w) in e.sweep(weight) {
        acc += &w;
    }
    Ok(acc)
}

fn last_cell_of_column(e: &Engine, x: i32) -> Result<usize> {
    e.order
        .iter()
        .position(|&(vx, vy)| vx == x && vx + vy == 0)
        .ok_or(Error::OutOfDomain { x, y: -x })
}

/// Exact distribution of the cut after column `x`, from forward and backward transfer sweeps.
pub fn column_marginal(domain: &TriangleDomain, x: i32) -> Result<BTreeMap<ColumnState, BigUint>> {
    let e = Engine::new(domain, Track::None)?;
    let i = last_cell_of_column(&e, x)? + 1;
    let layers = e.reachable();
    let one = |_: Vertex, _: u8| BigUint::one();
    let back = e.backward(&layers, &one);
    // forward counts up to layer i
    let mut fwd: HashMap<u64, BigUint> = HashMap::new();
    fwd.insert(0, BigUint::one());
    let mut buf = Vec::new();
    for j in 0..i {
        let mut next: HashMap<u64, BigUint> = HashMap::new();
        for (s, w) in fwd {
            e.moves(j, s, &mut buf);
            for mv in &buf {
                *next.entry(mv.next).or_default() += &w;
            }
        }
        fwd = next;
    }
    let mut out = BTreeMap::new();
    for (s, f) in fwd {
        if let Some(b) = back[i].get(&s) {
            let p = f * b;
            if !p.is_zero() {
                *out.entry(e.cut_key(s)).or_insert_with(BigUint::zero) += p;
            }
        }
    }
    Ok(out)
}

/// The cut after column `x` read off a configuration, in the transfer-state layout.
pub fn cut_state(c: &PathConfig, x: i32) -> ColumnState {
    let m = c.m() as i32;
    let mut s = 0u64;
    if x < 0 {
        for y in -x..m {
            if c.get((x, y), Family::H) {
                s |= 1 << y;
            }
        }
        for y in -x - 1..m - 1 {
            if c.get((x, y + 1), Family::D) {
                s |= 1 << (m + y);
            }
        }
    }
    s
}

/// The same distribution by enumerating every configuration.
pub fn column_marginal_brute(domain: &TriangleDomain, x: i32) -> BTreeMap<ColumnState, BigUint> {
    let mut out = BTreeMap::new();
    for_each_config(domain, |c| {
        *out.entry(cut_state(c, x)).or_insert_with(BigUint::zero) += 1u32;
    });
    out
}
