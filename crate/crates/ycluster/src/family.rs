//! The two quiver families, their index sets, layers and mutation schedule.
//!
//! A vertex is a pair `(i, i')`. Open vertices are `(c, i')` with column
//! `c = 1..n-1` and `i' = 1..m`; filled vertices are `(n, i')` with
//! `i' = m+1..m+n` (sine-Gordon) or `i' = m+1..m+n-3` (reduced). The second
//! coordinate doubles as the layer index of the Y-/T-system, so
//! `layer(i, i') = i'` for every vertex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Parity, Shape, VertexId, VertexInfo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Sg,
    Rsg,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Sg => "sg",
            FamilyKind::Rsg => "rsg",
        })
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sg" => Ok(FamilyKind::Sg),
            "rsg" => Ok(FamilyKind::Rsg),
            other => Err(Error::Domain(format!("unknown family `{other}`"))),
        }
    }
}

/// A member of one of the families, identified by `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family {
    pub kind: FamilyKind,
    pub m: u32,
    pub n: u32,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.m, self.n)
    }
}

impl Family {
    pub fn new(kind: FamilyKind, m: u32, n: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain(format!("m must be >= 1, got {m}")));
        }
        if n < 4 {
            return Err(Error::Domain(format!("n must be >= 4, got {n}")));
        }
        Ok(Self { kind, m, n })
    }

    pub fn sg(m: u32, n: u32) -> Result<Self> {
        Self::new(FamilyKind::Sg, m, n)
    }

    pub fn rsg(m: u32, n: u32) -> Result<Self> {
        Self::new(FamilyKind::Rsg, m, n)
    }

    /// Number of vertices.
    pub fn rank(&self) -> usize {
        let (m, n) = (self.m as usize, self.n as usize);
        match self.kind {
            FamilyKind::Sg => m * n - m + n,
            FamilyKind::Rsg => m * n - m + n - 3,
        }
    }

    /// `mn - m + n`, the quantity the period is stated in for both families.
    pub fn big_n(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n as i64);
        m * n - m + n
    }

    /// Number of Y-/T-system layers.
    pub fn layer_count(&self) -> usize {
        let (m, n) = (self.m as usize, self.n as usize);
        match self.kind {
            FamilyKind::Sg => m + n,
            FamilyKind::Rsg => m + n - 3,
        }
    }

    /// Half-shift `d_i` of layer `i`.
    pub fn d(&self, layer: usize) -> i64 {
        if layer <= self.m as usize {
            self.n as i64 - 1
        } else {
            1
        }
    }

    pub fn max_d(&self) -> i64 {
        self.n as i64 - 1
    }

    /// Length of the composite mutation sequence.
    pub fn schedule_period(&self) -> usize {
        2 * self.n as usize - 2
    }

    /// Period after which seeds return up to the permutation τ.
    pub fn half_period(&self) -> i64 {
        2 * self.big_n()
    }

    /// Whether the layer permutation ω is nontrivial (odd sine-Gordon rank).
    pub fn has_fork_swap(&self) -> bool {
        self.kind == FamilyKind::Sg && self.big_n() % 2 == 1
    }

    /// Full period of the relabeled Y- and T-systems.
    pub fn full_period(&self) -> i64 {
        if self.has_fork_swap() {
            2 * self.half_period()
        } else {
            self.half_period()
        }
    }

    /// Window of the dilogarithm sums.
    pub fn dilog_window(&self) -> i64 {
        match self.kind {
            FamilyKind::Sg => 4 * self.big_n(),
            FamilyKind::Rsg => 2 * self.big_n(),
        }
    }

    pub fn is_open_layer(&self, layer: usize) -> bool {
        layer >= 1 && layer <= self.m as usize
    }

    fn last_ip(&self) -> u32 {
        self.layer_count() as u32
    }

    /// All vertices in sorted order.
    pub fn vertices(&self) -> Vec<VertexInfo> {
        let mut out = Vec::with_capacity(self.rank());
        for c in 1..self.n {
            for l in 1..=self.m {
                out.push(self.info_unchecked(VertexId::new(c, l)));
            }
        }
        for ip in self.m + 1..=self.last_ip() {
            out.push(self.info_unchecked(VertexId::new(self.n, ip)));
        }
        out
    }

    pub fn contains(&self, v: VertexId) -> bool {
        if v.i >= 1 && v.i < self.n {
            v.ip >= 1 && v.ip <= self.m
        } else {
            v.i == self.n && v.ip > self.m && v.ip <= self.last_ip()
        }
    }

    pub fn info(&self, v: VertexId) -> Result<VertexInfo> {
        if self.contains(v) {
            Ok(self.info_unchecked(v))
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    fn info_unchecked(&self, v: VertexId) -> VertexInfo {
        if v.i < self.n {
            let parity = if (self.m - v.ip) % 2 == 0 {
                Parity::Plus
            } else {
                Parity::Minus
            };
            VertexInfo {
                id: v,
                shape: Shape::Open,
                parity,
            }
        } else {
            // position along the filled chain, with the two fork tips sharing one
            let mut q = v.ip - self.m + 1;
            if self.kind == FamilyKind::Sg && q == self.n + 1 {
                q = self.n;
            }
            let parity = if q % 2 == 1 { Parity::Plus } else { Parity::Minus };
            VertexInfo {
                id: v,
                shape: Shape::Filled,
                parity,
            }
        }
    }

    /// Open columns mutated at step `u` of the composite sequence, as
    /// `(column, parity)` pairs.
    fn open_columns_at(&self, u: usize) -> Vec<(u32, Parity)> {
        let n = self.n as usize;
        let u = u % self.schedule_period();
        let p = u / 2;
        let mut out = Vec::new();
        if n % 2 == 0 {
            if u % 2 == 0 {
                out.push(((p + 1) as u32, Parity::Plus));
            } else {
                out.push((((p + n / 2) % (n - 1) + 1) as u32, Parity::Minus));
            }
        } else if u % 2 == 0 {
            out.push(((p + 1) as u32, Parity::Plus));
            out.push((((p + (n - 1) / 2) % (n - 1) + 1) as u32, Parity::Minus));
        }
        out
    }

    /// Vertices mutated (simultaneously) at step `u`, sorted.
    pub fn step(&self, u: usize) -> Vec<VertexId> {
        let filled = if u % 2 == 0 { Parity::Plus } else { Parity::Minus };
        let cols = self.open_columns_at(u);
        let mut out: Vec<VertexId> = self
            .vertices()
            .into_iter()
            .filter(|info| match info.shape {
                Shape::Filled => info.parity == filled,
                Shape::Open => cols
                    .iter()
                    .any(|&(c, par)| info.id.i == c && info.parity == par),
            })
            .map(|info| info.id)
            .collect();
        out.sort();
        out
    }

    /// The vertex of `layer` mutated at time `u`, if any.
    pub fn mutation_vertex(&self, layer: usize, u: i64) -> Option<VertexId> {
        if layer < 1 || layer > self.layer_count() {
            return None;
        }
        let p = self.schedule_period() as i64;
        let step = u.rem_euclid(p) as usize;
        self.step(step).into_iter().find(|v| v.ip as usize == layer)
    }

    /// Layers adjacent to `layer` in the Y-/T-system diagram.
    pub fn adjacent_layers(&self, layer: usize) -> Vec<usize> {
        let (m, n) = (self.m as usize, self.n as usize);
        let l = self.layer_count();
        let mut out = Vec::new();
        match self.kind {
            FamilyKind::Sg => {
                let fork = m + n - 2;
                if layer <= fork {
                    if layer > 1 {
                        out.push(layer - 1);
                    }
                    if layer < fork {
                        out.push(layer + 1);
                    } else {
                        out.extend([fork + 1, fork + 2]);
                    }
                } else {
                    out.push(fork);
                }
            }
            FamilyKind::Rsg => {
                if layer > 1 {
                    out.push(layer - 1);
                }
                if layer < l {
                    out.push(layer + 1);
                }
            }
        }
        out
    }

    /// The column rotation σ applied to a vertex `k` times; filled vertices are fixed.
    pub fn sigma(&self, v: VertexId, k: i64) -> VertexId {
        if v.i >= self.n {
            return v;
        }
        let c = (v.i as i64 - 1 + k).rem_euclid(self.n as i64 - 1) + 1;
        VertexId::new(c as u32, v.ip)
    }

    /// The two fork tips of a sine-Gordon quiver.
    pub fn fork_tips(&self) -> Option<(VertexId, VertexId)> {
        match self.kind {
            FamilyKind::Sg => Some((
                VertexId::new(self.n, self.m + self.n - 1),
                VertexId::new(self.n, self.m + self.n),
            )),
            FamilyKind::Rsg => None,
        }
    }

    /// The vertex permutation τ under which seeds recur after the half period.
    pub fn tau(&self, v: VertexId) -> VertexId {
        let w = self.sigma(v, 1);
        match self.fork_tips() {
            Some((a, b)) if self.has_fork_swap() => {
                if w == a {
                    b
                } else if w == b {
                    a
                } else {
                    w
                }
            }
            _ => w,
        }
    }

    pub fn tau_inv(&self, v: VertexId) -> VertexId {
        let w = self.sigma(v, -1);
        match self.fork_tips() {
            Some((a, b)) if self.has_fork_swap() => {
                if w == a {
                    b
                } else if w == b {
                    a
                } else {
                    w
                }
            }
            _ => w,
        }
    }

    /// The layer permutation ω (swap of the two fork layers when the rank is odd).
    pub fn omega(&self, layer: usize) -> usize {
        if self.has_fork_swap() {
            let tip = self.layer_count() - 1;
            if layer == tip {
                return tip + 1;
            }
            if layer == tip + 1 {
                return tip;
            }
        }
        layer
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(Family::sg(1, 4).unwrap().rank(), 7);
        assert_eq!(Family::rsg(1, 4).unwrap().rank(), 4);
        assert_eq!(Family::sg(2, 4).unwrap().rank(), 10);
        assert_eq!(Family::rsg(4, 7).unwrap().rank(), 28);
        for f in [Family::sg(3, 6).unwrap(), Family::rsg(2, 9).unwrap()] {
            assert_eq!(f.vertices().len(), f.rank());
        }
    }

    #[test]
    fn small_n_is_a_domain_error() {
        assert!(matches!(Family::sg(1, 3), Err(Error::Domain(_))));
        assert!(matches!(Family::rsg(0, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn m1_even_schedule() {
        // n = 4: (1,1) at 0, (2,1) at 2, (3,1) at 4; no open vertex at odd times.
        // Filled (4,3) is mutated at even times, the others at odd times.
        let f = Family::sg(1, 4).unwrap();
        let v = VertexId::new;
        assert_eq!(f.step(0), vec![v(1, 1), v(4, 3)]);
        assert_eq!(f.step(1), vec![v(4, 2), v(4, 4), v(4, 5)]);
        assert_eq!(f.step(2), vec![v(2, 1), v(4, 3)]);
        assert_eq!(f.step(4), vec![v(3, 1), v(4, 3)]);
    }

    #[test]
    fn every_open_vertex_is_mutated_once_per_period() {
        for kind in [FamilyKind::Sg, FamilyKind::Rsg] {
            for m in 1..=3 {
                for n in 4..=9 {
                    let f = Family::new(kind, m, n).unwrap();
                    for info in f.vertices() {
                        let times: Vec<usize> = (0..f.schedule_period())
                            .filter(|&u| f.step(u).contains(&info.id))
                            .collect();
                        let want = if info.shape == Shape::Open { 1 } else { n as usize - 1 };
                        assert_eq!(times.len(), want, "{f} {}", info.id);
                    }
                }
            }
        }
    }

    #[test]
    fn layer_m_is_plus_and_parity_alternates() {
        let f = Family::sg(3, 5).unwrap();
        let par = |l| f.info(VertexId::new(1, l)).unwrap().parity;
        assert_eq!(par(3), Parity::Plus);
        assert_eq!(par(2), Parity::Minus);
        assert_eq!(par(1), Parity::Plus);
    }

    #[test]
    fn tau_and_omega() {
        let f = Family::sg(1, 4).unwrap();
        assert!(f.has_fork_swap());
        let v = VertexId::new;
        assert_eq!(f.tau(v(3, 1)), v(1, 1));
        assert_eq!(f.tau(v(4, 4)), v(4, 5));
        assert_eq!(f.tau_inv(f.tau(v(2, 1))), v(2, 1));
        assert_eq!(f.omega(4), 5);
        let even = Family::sg(2, 4).unwrap();
        assert!(!even.has_fork_swap());
        assert_eq!(even.omega(5), 5);
    }

    #[test]
    fn adjacency_is_symmetric() {
        for f in [Family::sg(2, 5).unwrap(), Family::rsg(3, 6).unwrap()] {
            for a in 1..=f.layer_count() {
                for b in f.adjacent_layers(a) {
                    assert!(f.adjacent_layers(b).contains(&a));
                }
            }
        }
    }
}
