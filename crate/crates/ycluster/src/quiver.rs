//! Labeled quivers, matrix mutation, the family builders, canonical forms
//! and Dynkin recognition.
//!
//! Convention: `B[a][b]` is the number of arrows `a → b` minus the number of
//! arrows `b → a`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Family, FamilyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub i: u32,
    pub ip: u32,
}

impl VertexId {
    pub const fn new(i: u32, ip: u32) -> Self {
        Self { i, ip }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.ip)
    }
}

impl std::str::FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed vertex `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        Ok(Self::new(
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "o")]
    Open,
    #[serde(rename = "b")]
    Filled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexInfo {
    pub id: VertexId,
    pub shape: Shape,
    pub parity: Parity,
}

/// Square skew-symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    size: usize,
    data: Vec<i32>,
}

impl ExchangeMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![0; size * size],
        }
    }

    pub fn from_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let size = rows.len();
        let mut m = Self::zeros(size);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Domain("exchange matrix is not square".into()));
            }
            for (b, &x) in row.iter().enumerate() {
                m.data[a * size + b] = x;
            }
        }
        if !m.is_skew_symmetric() {
            return Err(Error::Domain("exchange matrix is not skew-symmetric".into()));
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> i32 {
        self.data[a * self.size + b]
    }

    /// Sets `B[a][b] = x` and `B[b][a] = -x`.
    pub fn set(&mut self, a: usize, b: usize, x: i32) {
        self.data[a * self.size + b] = x;
        self.data[b * self.size + a] = -x;
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.get(a, b) == -self.get(b, a)))
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Self {
        let n = self.size;
        let mut out = self.clone();
        for a in 0..n {
            for b in 0..n {
                out.data[a * n + b] = if a == k || b == k {
                    -self.get(a, b)
                } else {
                    let (ak, kb) = (self.get(a, k), self.get(k, b));
                    self.get(a, b) + (ak.abs() * kb + ak * kb.abs()) / 2
                };
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.data.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Neighbours of `a` with nonzero entry.
    pub fn neighbours(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&b| self.get(a, b) != 0)
    }
}

/// A quiver without loops or 2-cycles whose vertices carry labels.
/// Vertices are kept sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledQuiver {
    vertices: Vec<VertexInfo>,
    b: ExchangeMatrix,
}

impl LabeledQuiver {
    pub fn new(mut vertices: Vec<VertexInfo>, arrows: &[(VertexId, VertexId, i32)]) -> Result<Self> {
        vertices.sort_by_key(|v| v.id);
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::Domain(format!("duplicate vertex {}", w[0].id)));
            }
        }
        let mut q = Self {
            b: ExchangeMatrix::zeros(vertices.len()),
            vertices,
        };
        for &(from, to, mult) in arrows {
            if from == to {
                return Err(Error::Domain(format!("loop at {from}")));
            }
            let (a, b) = (q.index(from)?, q.index(to)?);
            let cur = q.b.get(a, b);
            if cur < 0 {
                return Err(Error::Domain(format!("2-cycle between {from} and {to}")));
            }
            q.b.set(a, b, cur + mult);
        }
        Ok(q)
    }

    /// Quiver with default labels `(k, 1)` for `k = 1..=size`.
    pub fn from_matrix(b: ExchangeMatrix) -> Self {
        let vertices = (1..=b.size() as u32)
            .map(|k| VertexInfo {
                id: VertexId::new(k, 1),
                shape: Shape::Open,
                parity: Parity::Plus,
            })
            .collect();
        Self { vertices, b }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexInfo] {
        &self.vertices
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn index(&self, v: VertexId) -> Result<usize> {
        self.vertices
            .binary_search_by_key(&v, |info| info.id)
            .map_err(|_| Error::InvalidVertex(v))
    }

    pub fn id(&self, a: usize) -> VertexId {
        self.vertices[a].id
    }

    /// `B[a][b]` by label.
    pub fn entry(&self, a: VertexId, b: VertexId) -> Result<i32> {
        Ok(self.b.get(self.index(a)?, self.index(b)?))
    }

    pub fn mutate(&self, k: VertexId) -> Result<Self> {
        let idx = self.index(k)?;
        Ok(Self {
            vertices: self.vertices.clone(),
            b: self.b.mutate(idx),
        })
    }

    /// Mutate at every vertex of `ks`, which must be pairwise non-adjacent.
    pub fn mutate_all(&self, ks: &[VertexId]) -> Result<Self> {
        self.check_independent(ks)?;
        let mut q = self.clone();
        for &k in ks {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    pub fn check_independent(&self, ks: &[VertexId]) -> Result<()> {
        for (x, &a) in ks.iter().enumerate() {
            for &b in &ks[x + 1..] {
                if self.entry(a, b)? != 0 {
                    return Err(Error::AdjacencyViolation(a, b));
                }
            }
        }
        Ok(())
    }

    /// Arrows as `(from, to, multiplicity)`, sorted.
    pub fn arrows(&self) -> Vec<(VertexId, VertexId, i32)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                let x = self.b.get(a, b);
                if x > 0 {
                    out.push((self.id(a), self.id(b), x));
                }
            }
        }
        out
    }

    /// Apply a bijection to the labels, carrying each vertex's data along.
    pub fn relabel(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Self> {
        let vertices: Vec<VertexInfo> = self
            .vertices
            .iter()
            .map(|v| VertexInfo { id: f(v.id), ..*v })
            .collect();
        let arrows: Vec<_> = self.arrows().into_iter().map(|(a, b, x)| (f(a), f(b), x)).collect();
        Self::new(vertices, &arrows)
    }

    /// Same labels and same arrows; shapes and parities are ignored.
    pub fn same_arrows(&self, other: &Self) -> bool {
        self.ids().eq(other.ids()) && self.b == other.b
    }
}

impl fmt::Display for LabeledQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b, x) in self.arrows() {
            if x == 1 {
                writeln!(f, "{a} -> {b}")?;
            } else {
                writeln!(f, "{a} -{x}-> {b}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    i: u32,
    ip: u32,
    shape: Shape,
    parity: Parity,
}

#[derive(Serialize, Deserialize)]
struct ArrowRecord {
    from: String,
    to: String,
    mult: i32,
}

#[derive(Serialize, Deserialize)]
struct QuiverRecord {
    vertices: Vec<VertexRecord>,
    arrows: Vec<ArrowRecord>,
}

impl Serialize for LabeledQuiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverRecord {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    i: v.id.i,
                    ip: v.id.ip,
                    shape: v.shape,
                    parity: v.parity,
                })
                .collect(),
            arrows: self
                .arrows()
                .into_iter()
                .map(|(a, b, mult)| ArrowRecord {
                    from: a.to_string(),
                    to: b.to_string(),
                    mult,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledQuiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = QuiverRecord::deserialize(d)?;
        let vertices = rec
            .vertices
            .into_iter()
            .map(|v| VertexInfo {
                id: VertexId::new(v.i, v.ip),
                shape: v.shape,
                parity: v.parity,
            })
            .collect();
        let mut arrows = Vec::with_capacity(rec.arrows.len());
        for a in rec.arrows {
            if a.mult <= 0 {
                return Err(D::Error::custom("arrow multiplicity must be positive"));
            }
            let from: VertexId = a.from.parse().map_err(D::Error::custom)?;
            let to: VertexId = a.to.parse().map_err(D::Error::custom)?;
            arrows.push((from, to, a.mult));
        }
        LabeledQuiver::new(vertices, &arrows).map_err(D::Error::custom)
    }
}

/// The initial quiver of a family member.
pub fn build_quiver(family: &Family) -> LabeledQuiver {
    let (m, n) = (family.m, family.n);
    let rsg = family.kind == FamilyKind::Rsg;
    let mut arrows: Vec<(VertexId, VertexId, i32)> = Vec::new();
    let mut arrow = |a: VertexId, b: VertexId| arrows.push((a, b, 1));

    // Position q = 2..n along the filled chain; q = n stands for both fork
    // tips in the sine-Gordon case. The reduced chain stops at q = n - 2.
    let filled = |q: u32| -> Vec<VertexId> {
        let ip = |q: u32| q + m - 1;
        if rsg && q > n - 2 {
            vec![]
        } else if !rsg && q == n {
            vec![VertexId::new(n, ip(n)), VertexId::new(n, ip(n + 1))]
        } else {
            vec![VertexId::new(n, ip(q))]
        }
    };

    // filled chain: odd positions are sources
    let last = if rsg { n - 3 } else { n - 1 };
    for q in 2..=last {
        let (src, dst) = if q % 2 == 1 { (q, q + 1) } else { (q + 1, q) };
        for s in filled(src) {
            for d in filled(dst) {
                arrow(s, d);
            }
        }
    }

    // open layers of each column: the minus end is a source in the first
    // floor(n/2) columns and a sink in the rest
    let half = n / 2;
    for c in 1..n {
        for l in 1..m {
            let (lo, hi) = (VertexId::new(c, l), VertexId::new(c, l + 1));
            let (minus, plus) = if (m - l) % 2 == 1 { (lo, hi) } else { (hi, lo) };
            if c <= half {
                arrow(minus, plus);
            } else {
                arrow(plus, minus);
            }
        }
    }

    // layer m of each column against the filled chain
    for c in 1..n {
        let v = VertexId::new(c, m);
        if c <= half {
            let r = c - 1;
            if r >= 1 {
                for b in filled(2 * r + 1) {
                    arrow(v, b);
                }
            }
            for b in filled(2 * r + 2) {
                arrow(b, v);
            }
        } else {
            let r = n - c;
            for b in filled(2 * r + 1) {
                arrow(v, b);
            }
            for b in filled(2 * r) {
                arrow(b, v);
            }
        }
    }

    if rsg {
        let tip = VertexId::new(n, m + n - 3);
        let mid = |c: u32| VertexId::new(c, m);
        if n % 2 == 0 {
            arrow(mid(n / 2), tip);
            arrow(mid(n / 2 + 1), mid(n / 2));
        } else {
            arrow(tip, mid((n + 1) / 2));
            arrow(mid((n + 1) / 2), mid((n - 1) / 2));
        }
    }

    let mut merged: BTreeMap<(VertexId, VertexId), i32> = BTreeMap::new();
    for (a, b, x) in arrows {
        if a < b {
            *merged.entry((a, b)).or_default() += x;
        } else {
            *merged.entry((b, a)).or_default() -= x;
        }
    }
    let arrows: Vec<_> = merged
        .into_iter()
        .filter(|&(_, x)| x != 0)
        .map(|((a, b), x)| if x > 0 { (a, b, x) } else { (b, a, -x) })
        .collect();
    LabeledQuiver::new(family.vertices(), &arrows).expect("builder produced a valid quiver")
}

pub fn build_sg_quiver(m: u32, n: u32) -> Result<LabeledQuiver> {
    Ok(build_quiver(&Family::sg(m, n)?))
}

pub fn build_rsg_quiver(m: u32, n: u32) -> Result<LabeledQuiver> {
    Ok(build_quiver(&Family::rsg(m, n)?))
}

/// Isomorphism-invariant encoding of an unlabeled quiver: two quivers have
/// equal forms exactly when they are isomorphic as directed multigraphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Canonical form by colour refinement followed by individualisation of the
/// first non-singleton cell, keeping the smallest encoding over all leaves.
pub fn canonical_form(b: &ExchangeMatrix) -> CanonicalForm {
    let n = b.size();
    let colors = refine(b, vec![0; n]);
    let mut best: Option<Vec<u8>> = None;
    search(b, colors, &mut best);
    CanonicalForm(best.unwrap_or_else(|| encode(b, &[])))
}

pub fn quiver_canonical_form(q: &LabeledQuiver) -> CanonicalForm {
    canonical_form(q.matrix())
}

/// Iterated colour refinement. Colours are ranks of sorted signatures, so the
/// result depends only on the isomorphism class of `(b, colors)`.
fn refine(b: &ExchangeMatrix, mut colors: Vec<u32>) -> Vec<u32> {
    let n = b.size();
    loop {
        let sigs: Vec<(u32, Vec<(u32, i32)>)> = (0..n)
            .map(|a| {
                let mut nb: Vec<(u32, i32)> =
                    b.neighbours(a).map(|c| (colors[c], b.get(a, c))).collect();
                nb.sort_unstable();
                (colors[a], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u32)
            .collect();
        let before = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        if distinct.len() == before {
            return next;
        }
        colors = next;
    }
}

fn search(b: &ExchangeMatrix, colors: Vec<u32>, best: &mut Option<Vec<u8>>) {
    let n = b.size();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| colors[a]);
        let enc = encode(b, &order);
        if best.as_ref().is_none_or(|cur| enc < *cur) {
            *best = Some(enc);
        }
        return;
    };
    for v in (0..n).filter(|&a| colors[a] as usize == cell) {
        // split v off to the front of its cell
        let mut split: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
        split[v] = 2 * cell as u32;
        search(b, refine(b, split), best);
    }
}

fn encode(b: &ExchangeMatrix, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(2 + n * (n - 1) / 2);
    out.extend_from_slice(&(n as u16).to_be_bytes());
    for x in 0..n {
        for y in x + 1..n {
            out.push(b.get(order[x], order[y]) as i8 as u8);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        match *self {
            DynkinType::A(n) => n + 1,
            DynkinType::D(n) => 2 * n - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(8) => 30,
            DynkinType::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

/// The Dynkin type of the underlying graph, if it is a simply-laced
/// Dynkin diagram (any orientation).
pub fn dynkin_type(b: &ExchangeMatrix) -> Option<DynkinType> {
    let n = b.size();
    if n == 0 {
        return None;
    }
    let mut edges = 0;
    for a in 0..n {
        for c in a + 1..n {
            match b.get(a, c).abs() {
                0 => {}
                1 => edges += 1,
                _ => return None,
            }
        }
    }
    if edges != n - 1 {
        return None;
    }
    // connected + n-1 edges = tree
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for c in b.neighbours(a) {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let deg: Vec<usize> = (0..n).map(|a| b.neighbours(a).count()).collect();
    let branch_points: Vec<usize> = (0..n).filter(|&a| deg[a] >= 3).collect();
    match branch_points.as_slice() {
        [] => Some(DynkinType::A(n)),
        [centre] if deg[*centre] == 3 => {
            let mut arms: Vec<usize> = b
                .neighbours(*centre)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*centre, start, 1);
                    loop {
                        let next = b.neighbours(cur).find(|&x| x != prev);
                        match next {
                            Some(x) => {
                                prev = cur;
                                cur = x;
                                len += 1;
                            }
                            None => return len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(DynkinType::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> ExchangeMatrix {
        let mut b = ExchangeMatrix::zeros(n);
        for a in 0..n - 1 {
            b.set(a, a + 1, 1);
        }
        b
    }

    #[test]
    fn vertex_id_parses_its_display() {
        let v = VertexId::new(12, 3);
        assert_eq!(v.to_string(), "(12,3)");
        assert_eq!("(12,3)".parse::<VertexId>().unwrap(), v);
        assert!("12,3".parse::<VertexId>().is_err());
    }

    #[test]
    fn mutation_of_oriented_triangle() {
        // 0 -> 1 -> 2 -> 0, mutate at 1: arrows at 1 reverse, 0 -> 2 cancels 2 -> 0
        let mut b = ExchangeMatrix::zeros(3);
        b.set(0, 1, 1);
        b.set(1, 2, 1);
        b.set(2, 0, 1);
        let c = b.mutate(1);
        assert_eq!(c.get(1, 0), 1);
        assert_eq!(c.get(2, 1), 1);
        assert_eq!(c.get(0, 2), 0);
        assert_eq!(dynkin_type(&c), Some(DynkinType::A(3)));
    }

    #[test]
    fn dynkin_recognition() {
        assert_eq!(dynkin_type(&path(5)), Some(DynkinType::A(5)));
        let mut d = path(5);
        d.set(1, 4, 0);
        d.set(3, 4, 0);
        d.set(1, 4, 1);
        assert_eq!(dynkin_type(&d), Some(DynkinType::D(5)));
        let mut e6 = path(5);
        let mut big = ExchangeMatrix::zeros(6);
        for a in 0..5 {
            for c in 0..5 {
                big.data[a * 6 + c] = e6.get(a, c);
            }
        }
        big.set(2, 5, -1);
        e6 = big;
        assert_eq!(dynkin_type(&e6), Some(DynkinType::E(6)));
        let mut double = path(3);
        double.set(0, 1, 2);
        assert_eq!(dynkin_type(&double), None);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let b = path(4);
        let mut c = ExchangeMatrix::zeros(4);
        // same path relabelled 0->2, 1->0, 2->3, 3->1
        c.set(2, 0, 1);
        c.set(0, 3, 1);
        c.set(3, 1, 1);
        assert_eq!(canonical_form(&b), canonical_form(&c));
        // reversing one arrow changes the class
        let mut r = path(4);
        r.set(0, 1, -1);
        assert_ne!(canonical_form(&b), canonical_form(&r));
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let q = build_sg_quiver(1, 4).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let back: LabeledQuiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn json_rejects_unknown_vertices() {
        let s = r#"{"vertices":[{"i":1,"ip":1,"shape":"o","parity":"+"}],"arrows":[{"from":"(1,1)","to":"(2,1)","mult":1}]}"#;
        assert!(serde_json::from_str::<LabeledQuiver>(s).is_err());
    }

    #[test]
    fn simultaneous_mutation_rejects_adjacent_vertices() {
        let q = build_sg_quiver(1, 4).unwrap();
        let err = q.mutate_all(&[VertexId::new(1, 1), VertexId::new(4, 2)]);
        assert!(matches!(err, Err(Error::AdjacencyViolation(..))));
    }

    #[test]
    fn sg_1_4_neighbourhoods() {
        // (4,3) -> (4,2), (4,3) -> (4,4), (4,3) -> (4,5); (1,1) is a sink of (4,2)
        let q = build_sg_quiver(1, 4).unwrap();
        let v = VertexId::new;
        assert_eq!(q.entry(v(4, 3), v(4, 2)).unwrap(), 1);
        assert_eq!(q.entry(v(4, 3), v(4, 4)).unwrap(), 1);
        assert_eq!(q.entry(v(4, 3), v(4, 5)).unwrap(), 1);
        assert_eq!(q.entry(v(4, 2), v(1, 1)).unwrap(), 1);
        assert_eq!(q.entry(v(4, 4), v(4, 5)).unwrap(), 0);
    }
}
