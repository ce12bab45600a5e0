//! Searching the mutation class of a quiver for a Dynkin quiver.

use std::collections::{HashSet, VecDeque};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Family, FamilyKind};
use crate::quiver::{build_quiver, canonical_form, dynkin_type, DynkinType, ExchangeMatrix, LabeledQuiver, VertexId};
use crate::ysystem_verify::VerificationReport;

/// Outcome of a mutation-class search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSearchResult {
    /// Type reached and the mutation sequence reaching it, if found.
    pub found: Option<(DynkinType, Vec<VertexId>)>,
    /// Distinct isomorphism classes visited.
    pub explored: usize,
    pub bound_hit: bool,
}

/// Breadth-first search over the mutation class, deduplicated by canonical
/// form, stopping at the first quiver whose underlying graph is Dynkin.
pub fn find_dynkin(q: &LabeledQuiver, node_bound: usize) -> ClassSearchResult {
    struct Node {
        b: ExchangeMatrix,
        parent: usize,
        via: usize,
    }
    let mut nodes = vec![Node {
        b: q.matrix().clone(),
        parent: usize::MAX,
        via: usize::MAX,
    }];
    let mut seen = HashSet::new();
    seen.insert(canonical_form(q.matrix()));
    let mut queue = VecDeque::from([0usize]);
    let path_to = |nodes: &[Node], mut i: usize| {
        let mut path = Vec::new();
        while nodes[i].parent != usize::MAX {
            path.push(q.id(nodes[i].via));
            i = nodes[i].parent;
        }
        path.reverse();
        path
    };
    while let Some(i) = queue.pop_front() {
        if let Some(t) = dynkin_type(&nodes[i].b) {
            return ClassSearchResult {
                found: Some((t, path_to(&nodes, i))),
                explored: seen.len(),
                bound_hit: false,
            };
        }
        for k in 0..q.len() {
            // mutating back along the edge we came from is never new
            if k == nodes[i].via {
                continue;
            }
            let next = nodes[i].b.mutate(k);
            if seen.len() >= node_bound {
                return ClassSearchResult {
                    found: None,
                    explored: seen.len(),
                    bound_hit: true,
                };
            }
            if seen.insert(canonical_form(&next)) {
                nodes.push(Node {
                    b: next,
                    parent: i,
                    via: k,
                });
                queue.push_back(nodes.len() - 1);
            }
        }
    }
    ClassSearchResult {
        found: None,
        explored: seen.len(),
        bound_hit: false,
    }
}

/// A fixed sequence of mutations taking a family's quiver to a Dynkin quiver
/// of the expected type. Each step mutates a set of pairwise non-adjacent
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionScript {
    pub family: Family,
    pub expected: DynkinType,
    pub steps: Vec<Vec<VertexId>>,
}

impl ReductionScript {
    /// Apply the script to the family's quiver and return the end quiver,
    /// failing unless it has the expected type.
    pub fn apply(&self) -> Result<LabeledQuiver> {
        let mut q = build_quiver(&self.family);
        for step in &self.steps {
            q = q.mutate_all(step)?;
        }
        match dynkin_type(q.matrix()) {
            Some(t) if t == self.expected => Ok(q),
            other => Err(Error::Domain(format!(
                "script for {} ends at {}, expected {}",
                self.family,
                other.map_or("a non-Dynkin quiver".to_string(), |t| t.to_string()),
                self.expected
            ))),
        }
    }

    /// Script found by [`reduce_to_dynkin`], one vertex per step.
    pub fn greedy(family: &Family, max_steps: usize, lookahead: usize) -> Result<Self> {
        let (t, path) = reduce_to_dynkin(&build_quiver(family), max_steps, lookahead)?;
        Ok(ReductionScript {
            family: *family,
            expected: t,
            steps: path.into_iter().map(|v| vec![v]).collect(),
        })
    }
}

const SCRIPTS: [&str; 4] = [
    include_str!("../data/reductions/sg_1_7.json"),
    include_str!("../data/reductions/sg_4_7.json"),
    include_str!("../data/reductions/rsg_1_7.json"),
    include_str!("../data/reductions/rsg_4_7.json"),
];

/// Stored reduction scripts for the (1,7) and (4,7) quivers of both families.
pub fn stored_scripts() -> Vec<ReductionScript> {
    SCRIPTS
        .iter()
        .map(|s| serde_json::from_str(s).expect("stored reduction script parses"))
        .collect()
}

/// The stored script for `family`, if there is one.
pub fn stored_script(family: &Family) -> Option<ReductionScript> {
    stored_scripts().into_iter().find(|s| s.family == *family)
}

/// The Dynkin type the family's quiver is mutation-equivalent to.
pub fn expected_type(family: &Family) -> DynkinType {
    match family.kind {
        FamilyKind::Sg => DynkinType::D(family.rank()),
        FamilyKind::Rsg => DynkinType::A(family.rank()),
    }
}

fn excess(b: &ExchangeMatrix) -> i64 {
    let n = b.size();
    let mut arrows = 0i64;
    for a in 0..n {
        for c in a + 1..n {
            arrows += b.get(a, c).abs() as i64;
        }
    }
    arrows - (n as i64 - 1)
}

/// Greedy descent on the number of arrows until the quiver is a tree.
///
/// Each round takes the mutation that lowers the arrow count the most; when
/// none does, a breadth-first search of depth up to `lookahead` looks for a
/// sequence that does. The count drops every round, so this terminates. A connected quiver whose arrow
/// count equals `rank - 1` is a tree, and a tree in a finite mutation class
/// is the Dynkin diagram of that class.
pub fn reduce_to_dynkin(q: &LabeledQuiver, max_steps: usize, lookahead: usize) -> Result<(DynkinType, Vec<VertexId>)> {
    let mut b = q.matrix().clone();
    let mut path: Vec<usize> = Vec::new();
    while path.len() < max_steps {
        if let Some(t) = dynkin_type(&b) {
            return Ok((t, path.into_iter().map(|k| q.id(k)).collect()));
        }
        let cur = excess(&b);
        let best = (0..b.size())
            .map(|k| (excess(&b.mutate(k)), k))
            .min()
            .filter(|&(e, _)| e < cur);
        let seq = match best {
            Some((_, k)) => vec![k],
            None => improving_sequence(&b, cur, lookahead).ok_or_else(|| {
                Error::Domain(format!("no improving sequence within depth {lookahead} after {} steps", path.len()))
            })?,
        };
        for k in seq {
            b = b.mutate(k);
            path.push(k);
        }
    }
    Err(Error::Domain(format!("no Dynkin quiver within {max_steps} mutations")))
}

fn improving_sequence(b: &ExchangeMatrix, target: i64, depth: usize) -> Option<Vec<usize>> {
    let mut frontier = vec![(b.clone(), Vec::<usize>::new())];
    let mut local = HashSet::new();
    local.insert(b.clone());
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, seq) in &frontier {
            for k in 0..m.size() {
                if seq.last() == Some(&k) {
                    continue;
                }
                let c = m.mutate(k);
                if !local.insert(c.clone()) {
                    continue;
                }
                let mut s = seq.clone();
                s.push(k);
                if excess(&c) < target {
                    return Some(s);
                }
                next.push((c, s));
            }
        }
        frontier = next;
    }
    None
}

/// Coxeter arithmetic with `N = mn-m+n`, `h(A_k) = k+1`, `h(D_k) = 2k-2`.
///
/// The Y-system period is compared with the Coxeter period of the Dynkin
/// type of the quiver: `2N = h(D_N)+2` for sine-Gordon with `N` even,
/// `4N = 2(h(D_N)+2)` with `N` odd, and `2N = 2(h(A_{N-3})+2)` for the
/// reduced family. It is also compared with the per-level decomposition
/// `h(D_n)+2 + m(h(D_{n-1})+2)`, respectively
/// `2{h(A_{n-3})+2 + m(h(A_{n-4})+2)}`.
pub fn coxeter_crosscheck(family: &Family) -> VerificationReport {
    let start = Instant::now();
    let (m, n) = (family.m as i64, family.n as i64);
    let big_n = family.big_n();
    let h_a = |k: i64| k + 1;
    let h_d = |k: i64| 2 * k - 2;
    let (period, coxeter, levels) = match family.kind {
        FamilyKind::Sg if big_n % 2 == 0 => (2 * big_n, h_d(big_n) + 2, h_d(n) + 2 + m * (h_d(n - 1) + 2)),
        FamilyKind::Sg => (4 * big_n, 2 * (h_d(big_n) + 2), 2 * (h_d(n) + 2 + m * (h_d(n - 1) + 2))),
        FamilyKind::Rsg => (2 * big_n, 2 * (h_a(big_n - 3) + 2), 2 * (h_a(n - 3) + 2 + m * (h_a(n - 4) + 2))),
    };
    let residual = (period - coxeter).abs().max((period - levels).abs());
    let mut rep = VerificationReport {
        check: "coxeter".into(),
        family: family.kind,
        m: family.m,
        n: family.n,
        pass: residual == 0 && period == family.full_period(),
        residual: residual as f64,
        checked: 2,
        values: [
            ("period".to_string(), period as f64),
            ("coxeter".to_string(), coxeter as f64),
            ("levels".to_string(), levels as f64),
        ]
        .into_iter()
        .collect(),
        witnesses: Vec::new(),
        elapsed_ms: 0,
    };
    if !rep.pass {
        rep.witnesses.push(format!("period {period}, Coxeter {coxeter}, levels {levels}"));
    }
    rep.elapsed_ms = start.elapsed().as_millis() as u64;
    rep
}
