//! Independent reconstruction of the initial quiver from the T-system alone.
//!
//! At each time u the arrows at the mutated vertices are read off the
//! T-relation centred there (inflow from the first product, outflow to the
//! second). Undoing the mutations made before a pair is first touched gives
//! every entry of B(0). The result must coincide with the closed-form builder.

use std::collections::{BTreeSet, HashMap};

use ycluster::family::{Family, FamilyKind};
use ycluster::quiver::{build_quiver, VertexId};

type V = (u32, u32);

struct Oracle {
    sg: bool,
    m: i64,
    n: i64,
    layers: i64,
}

impl Oracle {
    fn new(f: &Family) -> Self {
        let (m, n) = (f.m as i64, f.n as i64);
        let sg = f.kind == FamilyKind::Sg;
        Oracle {
            sg,
            m,
            n,
            layers: if sg { m + n } else { m + n - 3 },
        }
    }

    fn period(&self) -> i64 {
        2 * self.n - 2
    }

    fn d(&self, i: i64) -> i64 {
        if i <= self.m {
            self.n - 1
        } else {
            1
        }
    }

    fn vertices(&self) -> Vec<V> {
        let mut out = Vec::new();
        for c in 1..self.n {
            for i in 1..=self.m {
                out.push((c as u32, i as u32));
            }
        }
        for i in self.m + 1..=self.layers {
            out.push((self.n as u32, i as u32));
        }
        out
    }

    fn plus_filled(&self, i: i64) -> bool {
        let mut q = i - self.m + 1;
        if self.sg && q == self.n + 1 {
            q = self.n;
        }
        q % 2 == 1
    }

    fn vertex_at(&self, i: i64, u: i64) -> Option<V> {
        let p = self.period();
        let u = u.rem_euclid(p);
        if i <= self.m {
            let t = if (self.m - i) % 2 == 0 { u } else { (u - (self.n - 1)).rem_euclid(p) };
            (t % 2 == 0).then_some(((t / 2 + 1) as u32, i as u32))
        } else {
            (self.plus_filled(i) == (u % 2 == 0)).then_some((self.n as u32, i as u32))
        }
    }

    fn step(&self, u: i64) -> Vec<V> {
        (1..=self.layers).filter_map(|i| self.vertex_at(i, u)).collect()
    }

    fn x_vertex(&self, j: i64, v: i64) -> V {
        self.vertex_at(j, v + self.d(j)).expect("x point on the mutation lattice")
    }

    fn adj(&self, i: i64) -> Vec<i64> {
        let (m, n) = (self.m, self.n);
        if self.sg && i == m + n - 2 {
            return vec![i - 1, m + n - 1, m + n];
        }
        if self.sg && (i == m + n - 1 || i == m + n) {
            return vec![m + n - 2];
        }
        [i - 1, i + 1].into_iter().filter(|&j| 1 <= j && j <= self.layers).collect()
    }

    /// Points of the two products of the T-relation for layer `i` at `u`.
    fn t_relation(&self, i: i64, u: i64) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
        let (m, n) = (self.m, self.n);
        if i <= m {
            return (self.adj(i).into_iter().map(|j| (j, u)).collect(), vec![]);
        }
        let upper = |i: i64| self.adj(i).into_iter().filter(|&j| j > m).map(|j| (j, u)).collect::<Vec<_>>();
        if self.sg {
            if i == m + 1 {
                (vec![(m, u - n + 2), (m, u + n - 2)], vec![(m + 2, u)])
            } else if i <= m + n - 2 {
                (vec![(m, u - m - n + 1 + i), (m, u + m + n - 1 - i)], upper(i))
            } else {
                (vec![(m, u)], vec![(m + n - 2, u)])
            }
        } else if n == 4 && i == m + 1 {
            (vec![(m, u - 2), (m, u + 2)], vec![(m, u)])
        } else if i == m + 1 {
            (vec![(m, u - n + 2), (m, u + n - 2)], vec![(m + 2, u)])
        } else if i <= m + n - 4 {
            (vec![(m, u - m - n + 1 + i), (m, u + m + n - 1 - i)], upper(i))
        } else {
            (vec![(m, u - 2), (m, u + 2)], vec![(m, u), (m + n - 4, u)])
        }
    }

    fn local(&self, u: i64) -> HashMap<(V, V), i32> {
        let mut b = HashMap::new();
        for k in self.step(u) {
            let (inflow, outflow) = self.t_relation(k.1 as i64, u);
            for (j, v) in inflow {
                let w = self.x_vertex(j, v);
                *b.entry((w, k)).or_insert(0) += 1;
                *b.entry((k, w)).or_insert(0) -= 1;
            }
            for (j, v) in outflow {
                let w = self.x_vertex(j, v);
                *b.entry((k, w)).or_insert(0) += 1;
                *b.entry((w, k)).or_insert(0) -= 1;
            }
        }
        b
    }

    fn initial_matrix(&self) -> HashMap<(V, V), i32> {
        let p = self.period();
        let locs: Vec<_> = (0..p).map(|u| self.local(u)).collect();
        let steps: Vec<BTreeSet<V>> = (0..p).map(|u| self.step(u).into_iter().collect()).collect();
        let get = |m: &HashMap<(V, V), i32>, a: V, b: V| m.get(&(a, b)).copied().unwrap_or(0);
        let vs = self.vertices();
        let mut b0 = HashMap::new();
        for (x, &a) in vs.iter().enumerate() {
            for &b in &vs[x + 1..] {
                let t = (0..p as usize).find(|&u| steps[u].contains(&a) || steps[u].contains(&b)).unwrap();
                let mut val = get(&locs[t], a, b);
                for s in 0..t {
                    for &k in &steps[s] {
                        let (bak, bkb) = (get(&locs[s], a, k), get(&locs[s], k, b));
                        val -= (bak.abs() * bkb + bak * bkb.abs()) / 2;
                    }
                }
                if val != 0 {
                    b0.insert((a, b), val);
                    b0.insert((b, a), -val);
                }
            }
        }
        b0
    }
}

#[test]
fn builder_matches_t_system_reconstruction() {
    for kind in [FamilyKind::Sg, FamilyKind::Rsg] {
        for m in 1..=4 {
            for n in 4..=11 {
                let f = Family::new(kind, m, n).unwrap();
                let oracle = Oracle::new(&f);
                let b0 = oracle.initial_matrix();
                let q = build_quiver(&f);
                assert_eq!(q.len(), oracle.vertices().len(), "{f}");
                for &a in &oracle.vertices() {
                    for &b in &oracle.vertices() {
                        if a == b {
                            continue;
                        }
                        let va = VertexId { i: a.0, ip: a.1 };
                        let vb = VertexId { i: b.0, ip: b.1 };
                        let want = b0.get(&(a, b)).copied().unwrap_or(0);
                        assert_eq!(q.entry(va, vb).unwrap(), want, "{f}: B[{va}][{vb}]");
                    }
                }
            }
        }
    }
}
