//! Relation templates and the checks run against trajectories: Y- and
//! T-relations, periodicity, the tropical sign census, quiver periodicity and
//! the dilogarithm sums.
//!
//! Templates are transcribed twice, once from the general `(m, n)` systems
//! and once from the `m = 1` systems, and tests compare the two. They are
//! also compared with relations read off a trajectory by tracking which
//! exchange factors reach each vertex between two of its mutations.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{Family, FamilyKind};
use crate::laurent::LaurentPoly;
use crate::quiver::{build_quiver, VertexId};
use crate::seed_engine::{label_g_prime_inv, run, MutationSchedule, Seed, Trajectory};
use crate::semifield::{Coeff, SemifieldKind, Sign, TropicalMonomial};

/// Relative tolerance for Y-relation and periodicity residuals.
pub const TOL_RELATION: f64 = 1e-9;
/// Relative tolerance for dilogarithm sums.
pub const TOL_DILOG: f64 = 1e-8;

/// Relative tolerances used by the numeric checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub relation: f64,
    pub dilog: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relation: TOL_RELATION,
            dilog: TOL_DILOG,
        }
    }
}

/// `Y_j(u + shift)` or `T_j(u + shift)` inside a relation centred at `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factor {
    pub layer: usize,
    pub shift: i64,
}

fn f(layer: usize, shift: i64) -> Factor {
    Factor { layer, shift }
}

/// `Y_i(u-d) Y_i(u+d) = ∏ (1 + Y_num) / ∏ (1 + Y_den^{-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YRelation {
    pub layer: usize,
    pub d: i64,
    pub num: Vec<Factor>,
    pub den: Vec<Factor>,
}

/// `T_i(u-d) T_i(u+d) = ∏ terms[0] + ∏ terms[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TRelation {
    pub layer: usize,
    pub d: i64,
    pub terms: [Vec<Factor>; 2],
}

impl YRelation {
    fn normalized(mut self) -> Self {
        self.num.sort();
        self.den.sort();
        self
    }
}

impl TRelation {
    fn normalized(mut self) -> Self {
        self.terms[0].sort();
        self.terms[1].sort();
        self.terms.sort();
        self
    }
}

/// Y-system of a family member, one relation per layer.
pub fn y_relations(family: &Family) -> Vec<YRelation> {
    let (m, n) = (family.m as usize, family.n as usize);
    let (mi, ni) = (m as i64, n as i64);
    let l = family.layer_count();
    let adj = |i| family.adjacent_layers(i);
    (1..=l)
        .map(|i| {
            let d = family.d(i);
            let (mut num, mut den) = (Vec::new(), Vec::new());
            if i < m {
                num = adj(i).into_iter().map(|j| f(j, 0)).collect();
            } else if i == m {
                if m >= 2 {
                    num.push(f(m - 1, 0));
                }
                let top = match family.kind {
                    FamilyKind::Sg => m + n - 2,
                    FamilyKind::Rsg => m + n - 3,
                };
                for j in m + 1..=top {
                    let ji = j as i64;
                    num.push(f(j, -mi - ni + 1 + ji));
                    num.push(f(j, mi + ni - 1 - ji));
                }
                match family.kind {
                    FamilyKind::Sg => {
                        num.push(f(m + n - 1, 0));
                        num.push(f(m + n, 0));
                    }
                    FamilyKind::Rsg => den.push(f(m + n - 3, 0)),
                }
            } else if i == m + 1 {
                num.push(f(m, 0));
                if m + 2 <= l {
                    den.push(f(m + 2, 0));
                }
            } else {
                den = adj(i).into_iter().map(|j| f(j, 0)).collect();
            }
            YRelation {
                layer: i,
                d,
                num,
                den,
            }
            .normalized()
        })
        .collect()
}

/// T-system of a family member, one relation per layer.
pub fn t_relations(family: &Family) -> Vec<TRelation> {
    let (m, n) = (family.m as usize, family.n as usize);
    let (mi, ni) = (m as i64, n as i64);
    let l = family.layer_count();
    let adj = |i| -> Vec<Factor> { family.adjacent_layers(i).into_iter().map(|j| f(j, 0)).collect() };
    let generic = |i: usize| {
        let ii = i as i64;
        vec![f(m, -mi - ni + 1 + ii), f(m, mi + ni - 1 - ii)]
    };
    (1..=l)
        .map(|i| {
            let d = family.d(i);
            let terms = if i <= m {
                [adj(i), vec![]]
            } else if i == m + 1 {
                let second = if family.kind == FamilyKind::Rsg && n == 4 {
                    vec![f(m, 0)]
                } else {
                    vec![f(m + 2, 0)]
                };
                [vec![f(m, -(ni - 2)), f(m, ni - 2)], second]
            } else {
                match family.kind {
                    FamilyKind::Sg if i <= m + n - 2 => [generic(i), adj(i)],
                    FamilyKind::Sg => [vec![f(m, 0)], vec![f(m + n - 2, 0)]],
                    FamilyKind::Rsg if i <= m + n - 4 => [generic(i), adj(i)],
                    FamilyKind::Rsg => [vec![f(m, -2), f(m, 2)], vec![f(m, 0), f(m + n - 4, 0)]],
                }
            };
            TRelation { layer: i, d, terms }.normalized()
        })
        .collect()
}

/// Y-system for `m = 1`, written out separately from [`y_relations`].
pub fn y_relations_m1(kind: FamilyKind, n: u32) -> Vec<YRelation> {
    let n = n as usize;
    let ni = n as i64;
    let top = match kind {
        FamilyKind::Sg => n + 1,
        FamilyKind::Rsg => n - 2,
    };
    // X_n: chain 1 - 2 - ... - (n-1), with n and n+1 both attached to n-1
    let adj = |i: usize| -> Vec<usize> {
        let mut out = Vec::new();
        match i {
            _ if i == n || i == n + 1 => out.push(n - 1),
            _ => {
                if i > 1 {
                    out.push(i - 1);
                }
                if i < n - 1 {
                    out.push(i + 1);
                }
                if i == n - 1 {
                    out.extend([n, n + 1]);
                }
            }
        }
        out.retain(|&j| j <= top);
        out
    };
    let mut rels = Vec::new();
    for i in 1..=top {
        let (mut num, mut den) = (Vec::new(), Vec::new());
        let d = if i == 1 { ni - 1 } else { 1 };
        match i {
            1 => {
                let last = if kind == FamilyKind::Sg { n - 1 } else { n - 2 };
                for j in 2..=last {
                    let ji = j as i64;
                    num.push(f(j, -ni + ji));
                    num.push(f(j, ni - ji));
                }
                if kind == FamilyKind::Sg {
                    num.extend([f(n, 0), f(n + 1, 0)]);
                } else {
                    den.push(f(n - 2, 0));
                }
            }
            2 => {
                num.push(f(1, 0));
                if !(kind == FamilyKind::Rsg && n == 4) {
                    den.push(f(3, 0));
                }
            }
            _ => den = adj(i).into_iter().map(|j| f(j, 0)).collect(),
        }
        rels.push(YRelation { layer: i, d, num, den }.normalized());
    }
    rels
}

/// T-system for `m = 1`, written out separately from [`t_relations`].
pub fn t_relations_m1(kind: FamilyKind, n: u32) -> Vec<TRelation> {
    let n = n as usize;
    let ni = n as i64;
    let mut rels = Vec::new();
    let mut push = |layer: usize, a: Vec<Factor>, b: Vec<Factor>| {
        let d = if layer == 1 { ni - 1 } else { 1 };
        rels.push(TRelation { layer, d, terms: [a, b] }.normalized());
    };
    push(1, vec![f(2, 0)], vec![]);
    match kind {
        FamilyKind::Sg => {
            push(2, vec![f(1, -(ni - 2)), f(1, ni - 2)], vec![f(3, 0)]);
            for i in 3..=n - 1 {
                let ii = i as i64;
                let mut nb = vec![f(i - 1, 0)];
                if i == n - 1 {
                    nb.extend([f(n, 0), f(n + 1, 0)]);
                } else {
                    nb.push(f(i + 1, 0));
                }
                push(i, vec![f(1, -ni + ii), f(1, ni - ii)], nb);
            }
            push(n, vec![f(1, 0)], vec![f(n - 1, 0)]);
            push(n + 1, vec![f(1, 0)], vec![f(n - 1, 0)]);
        }
        FamilyKind::Rsg if n == 4 => {
            push(2, vec![f(1, -2), f(1, 2)], vec![f(1, 0)]);
        }
        FamilyKind::Rsg => {
            push(2, vec![f(1, -(ni - 2)), f(1, ni - 2)], vec![f(3, 0)]);
            for i in 3..=n - 3 {
                let ii = i as i64;
                push(i, vec![f(1, -ni + ii), f(1, ni - ii)], vec![f(i - 1, 0), f(i + 1, 0)]);
            }
            push(n - 2, vec![f(1, -2), f(1, 2)], vec![f(1, 0), f(n - 3, 0)]);
        }
    }
    rels
}

/// Y-relation instances read off the exchange matrices of a trajectory,
/// keyed by `(layer, centre)`.
pub fn derive_y_relations(traj: &Trajectory) -> Result<Vec<(i64, YRelation)>> {
    let family = *traj.family();
    let q0 = traj.initial_quiver();
    let sched = traj.schedule();
    let times = mutation_times(traj);
    let mut out = Vec::new();
    for (v, ts) in &times {
        let k = q0.index(*v)?;
        for w in ts.windows(2) {
            let (t1, t2) = (w[0], w[1]);
            let c = (t1 + t2) / 2;
            let layer = v.ip as usize;
            let (mut num, mut den) = (Vec::new(), Vec::new());
            for s in t1 + 1..t2 {
                let b = traj.matrix(s)?;
                for &x in sched.at(s) {
                    let xi = q0.index(x)?;
                    let e = b.get(xi, k);
                    let (lx, _) = label_g_prime_inv(&family, x, s)?;
                    let target = if e < 0 { &mut num } else { &mut den };
                    for _ in 0..e.abs() {
                        target.push(f(lx, s - c));
                    }
                }
            }
            out.push((
                c,
                YRelation {
                    layer,
                    d: (t2 - t1) / 2,
                    num,
                    den,
                }
                .normalized(),
            ));
        }
    }
    Ok(out)
}

/// T-relation instances read off the exchange matrices: at each mutation of
/// a vertex, the two monomials of the exchange relation in layer coordinates.
pub fn derive_t_relations(traj: &Trajectory) -> Result<Vec<(i64, TRelation)>> {
    let family = *traj.family();
    let q0 = traj.initial_quiver();
    let times = mutation_times(traj);
    let next_after = |v: &VertexId, t: i64| times[v].iter().copied().find(|&s| s > t);
    let mut out = Vec::new();
    for (v, ts) in &times {
        let k = q0.index(*v)?;
        let layer = v.ip as usize;
        'times: for &t in ts {
            let b = traj.matrix(t)?;
            let mut terms = [Vec::new(), Vec::new()];
            for j in 0..q0.len() {
                let e = b.get(j, k);
                if e == 0 {
                    continue;
                }
                let w = q0.id(j);
                let Some(tw) = next_after(&w, t) else {
                    continue 'times;
                };
                let lw = w.ip as usize;
                let shift = tw - family.d(lw) - t;
                let slot = if e > 0 { 0 } else { 1 };
                for _ in 0..e.abs() {
                    terms[slot].push(f(lw, shift));
                }
            }
            out.push((
                t,
                TRelation {
                    layer,
                    d: family.d(layer),
                    terms,
                }
                .normalized(),
            ));
        }
    }
    Ok(out)
}

fn mutation_times(traj: &Trajectory) -> BTreeMap<VertexId, Vec<i64>> {
    let mut times: BTreeMap<VertexId, Vec<i64>> = BTreeMap::new();
    for v in traj.initial_quiver().ids() {
        times.insert(v, Vec::new());
    }
    for u in 0..traj.u_max() {
        for v in traj.schedule().at(u) {
            times.get_mut(v).unwrap().push(u);
        }
    }
    times
}

/// Outcome of one check on one family member.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub family: FamilyKind,
    pub m: u32,
    pub n: u32,
    pub pass: bool,
    /// Largest residual seen (relative for reals, mismatch count for exact checks).
    pub residual: f64,
    /// Number of relation instances or comparisons evaluated.
    pub checked: u64,
    pub values: BTreeMap<String, f64>,
    pub witnesses: Vec<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn new(check: &str, family: &Family) -> Self {
        Self {
            check: check.to_string(),
            family: family.kind,
            m: family.m,
            n: family.n,
            pass: true,
            residual: 0.0,
            checked: 0,
            values: BTreeMap::new(),
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    fn fail(&mut self, witness: String) {
        self.pass = false;
        if self.witnesses.len() < 10 {
            self.witnesses.push(witness);
        }
    }

    fn residual(&mut self, r: f64) {
        if r > self.residual || r.is_nan() {
            self.residual = r;
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        if self.checked == 0 {
            self.pass = false;
            if self.witnesses.is_empty() {
                self.witnesses.push("no instances checked".into());
            }
        }
        self
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

/// Compare two coefficients: relative difference for reals, 0/1 for exact kinds.
fn coeff_residual(a: &Coeff, b: &Coeff) -> f64 {
    match (a, b) {
        (Coeff::Real(x), Coeff::Real(y)) => rel_diff(x.get(), y.get()),
        _ => {
            if a == b {
                0.0
            } else {
                1.0
            }
        }
    }
}

fn coeff_ok(r: f64, kind: SemifieldKind, tol: f64) -> bool {
    match kind {
        SemifieldKind::PositiveReal => r < tol,
        _ => r == 0.0,
    }
}

/// Evaluate every Y-relation whose points lie in the trajectory.
pub fn check_y_relations(traj: &Trajectory) -> Result<VerificationReport> {
    check_y_relations_with(traj, &Tolerances::default())
}

pub fn check_y_relations_with(traj: &Trajectory, tol: &Tolerances) -> Result<VerificationReport> {
    let start = Instant::now();
    let family = *traj.family();
    let needed = 2 * family.max_d() + family.schedule_period() as i64;
    if traj.u_max() < needed {
        return Err(Error::InsufficientLength {
            needed,
            have: traj.u_max(),
        });
    }
    let kind = traj.kind();
    let mut rep = VerificationReport::new("y-relations", &family);
    for rel in y_relations(&family) {
        for c in rel.d..=traj.u_max() - rel.d {
            let Ok(lo) = traj.y_tilde(rel.layer, c - rel.d) else {
                continue;
            };
            let hi = traj.y_tilde(rel.layer, c + rel.d)?;
            let lhs = lo.mul(hi)?;
            let eval = || -> Result<Coeff> {
                let mut rhs = Coeff::one(kind);
                for x in &rel.num {
                    rhs = rhs.mul(&traj.y_tilde(x.layer, c + x.shift)?.one_plus())?;
                }
                for x in &rel.den {
                    rhs = rhs.mul(&traj.y_tilde(x.layer, c + x.shift)?.inv().one_plus().inv())?;
                }
                Ok(rhs)
            };
            let rhs = match eval() {
                Ok(r) => r,
                Err(Error::InsufficientLength { .. }) => continue,
                Err(e) => {
                    rep.fail(format!("layer {} centre {c}: {e}", rel.layer));
                    continue;
                }
            };
            rep.checked += 1;
            let r = coeff_residual(&lhs, &rhs);
            rep.residual(r);
            if !coeff_ok(r, kind, tol.relation) {
                rep.fail(format!("layer {} centre {c}: residual {r:e}", rel.layer));
            }
        }
    }
    Ok(rep.finish(start))
}

/// Evaluate every T-relation exactly on a symbolic trajectory.
pub fn check_t_relations(traj: &Trajectory) -> Result<VerificationReport> {
    let start = Instant::now();
    if !traj.is_symbolic() {
        return Err(Error::MissingSymbolicRun);
    }
    let family = *traj.family();
    let mut rep = VerificationReport::new("t-relations", &family);
    let maxu = traj.u_max();
    for rel in t_relations(&family) {
        for c in -rel.d..=maxu {
            let Ok(lo) = traj.x_tilde(rel.layer, c - rel.d) else {
                continue;
            };
            let eval = || -> Result<(LaurentPoly, LaurentPoly)> {
                let hi = traj.x_tilde(rel.layer, c + rel.d)?;
                let nv = lo.nvars();
                let mut sum = LaurentPoly::zero(nv);
                for term in &rel.terms {
                    let mut p = LaurentPoly::one(nv);
                    for x in term {
                        p = p.mul(traj.x_tilde(x.layer, c + x.shift)?);
                    }
                    sum = sum.add(&p);
                }
                Ok((lo.mul(hi), sum))
            };
            match eval() {
                Ok((lhs, rhs)) => {
                    rep.checked += 1;
                    if lhs != rhs {
                        rep.residual += 1.0;
                        rep.fail(format!("layer {} centre {c}", rel.layer));
                    }
                }
                Err(Error::InsufficientLength { .. }) => {}
                Err(e) => rep.fail(format!("layer {} centre {c}: {e}", rel.layer)),
            }
        }
    }
    Ok(rep.finish(start))
}

/// Half- and full-period checks on layer values, plus the seed-level
/// return to the τ-permuted initial seed.
pub fn check_periodicity(traj: &Trajectory) -> Result<VerificationReport> {
    check_periodicity_with(traj, &Tolerances::default())
}

pub fn check_periodicity_with(traj: &Trajectory, tol: &Tolerances) -> Result<VerificationReport> {
    let start = Instant::now();
    let family = *traj.family();
    let half = family.half_period();
    let p = family.schedule_period() as i64;
    let needed = half + p + family.max_d();
    if traj.u_max() < needed {
        return Err(Error::InsufficientLength {
            needed,
            have: traj.u_max(),
        });
    }
    let kind = traj.kind();
    let mut rep = VerificationReport::new("periodicity", &family);
    let l = family.layer_count();
    let mut shifts = vec![(half, true)];
    if family.has_fork_swap() && traj.u_max() >= family.full_period() + p {
        shifts.push((family.full_period(), false));
    }
    for (shift, twisted) in shifts {
        for layer in 1..=l {
            let target = if twisted { family.omega(layer) } else { layer };
            for u in 0..=traj.u_max() - shift {
                if kind != SemifieldKind::Trivial {
                    if let (Ok(a), Ok(b)) = (traj.y_tilde(layer, u + shift), traj.y_tilde(target, u)) {
                        rep.checked += 1;
                        let r = coeff_residual(a, b);
                        rep.residual(r);
                        if !coeff_ok(r, kind, tol.relation) {
                            rep.fail(format!("y layer {layer} u {u} shift {shift}: {r:e}"));
                        }
                    }
                }
                if traj.is_symbolic() {
                    let a = traj.x_tilde(layer, u + shift - family.d(layer));
                    let b = traj.x_tilde(target, u - family.d(layer));
                    if let (Ok(a), Ok(b)) = (a, b) {
                        rep.checked += 1;
                        if a != b {
                            rep.residual(1.0);
                            rep.fail(format!("x layer {layer} v {} shift {shift}", u - family.d(layer)));
                        }
                    }
                }
            }
        }
    }
    // Σ(2N) is the initial seed with labels moved by τ
    let q0 = traj.initial_quiver();
    for v in q0.ids() {
        let w = family.tau_inv(v);
        if kind != SemifieldKind::Trivial {
            let r = coeff_residual(traj.coeff(half, v)?, traj.coeff(0, w)?);
            rep.checked += 1;
            rep.residual(r);
            if !coeff_ok(r, kind, tol.relation) {
                rep.fail(format!("seed at {half}: coefficient at {v} is not the initial one at {w}"));
            }
        }
        if traj.is_symbolic() {
            rep.checked += 1;
            if traj.cluster_var(half, v)? != traj.cluster_var(0, w)? {
                rep.residual(1.0);
                rep.fail(format!("seed at {half}: cluster variable at {v} is not the initial one at {w}"));
            }
        }
    }
    Ok(rep.finish(start))
}

/// F-polynomial periodicity `F̃_i(u + 2N) = F̃_{ω(i)}(u)` on a principal run.
pub fn check_f_polynomial_periodicity(traj: &Trajectory) -> Result<VerificationReport> {
    let start = Instant::now();
    if !traj.is_principal() {
        return Err(Error::MissingSymbolicRun);
    }
    let family = *traj.family();
    let half = family.half_period();
    let mut rep = VerificationReport::new("f-polynomials", &family);
    for layer in 1..=family.layer_count() {
        let d = family.d(layer);
        for v in -d..=traj.u_max() - half - d {
            let (Ok(a), Ok(b)) = (
                traj.f_polynomial(layer, v + half),
                traj.f_polynomial(family.omega(layer), v),
            ) else {
                continue;
            };
            rep.checked += 1;
            if !b.is_polynomial() || !b.has_positive_coefficients() {
                rep.fail(format!("F({layer},{v}) is not a polynomial with positive coefficients"));
            }
            if a != b {
                rep.residual(1.0);
                rep.fail(format!("F({layer},{}) != F({},{v})", v + half, family.omega(layer)));
            }
        }
    }
    Ok(rep.finish(start))
}

/// Whether the tropical `y` at a forward point is expected to be negative.
pub fn expected_negative(family: &Family, v: VertexId, u: i64) -> bool {
    let (m, n) = (family.m, family.n as i64);
    let big = family.half_period();
    let late = (2 * n - 2..big).contains(&u);
    if v.i < family.n {
        return late;
    }
    match family.kind {
        FamilyKind::Sg => {
            if v.ip == m + 1 {
                late
            } else {
                (1..=m as i64 + 1).any(|k| u == 2 * k * (n - 1) || u == 2 * k * (n - 1) + 1)
            }
        }
        FamilyKind::Rsg => {
            let early = u == n - 2 || u == n - 1;
            if v.ip == m + 1 {
                early || late
            } else {
                early || (2..=2 * m as i64 + 2).any(|k| u == k * (n - 1) || u == k * (n - 1) + 1)
            }
        }
    }
}

/// Closed form of the number of negative tropical monomials over one half period.
pub fn expected_negative_count(family: &Family) -> i64 {
    let (m, n) = (family.m as i64, family.n as i64);
    match family.kind {
        FamilyKind::Sg => (m + 1) * family.big_n(),
        FamilyKind::Rsg => n * m * m - m * m + 3 * m * n - 8 * m + 2 * n - 6,
    }
}

/// Tropical sign census over `0 <= u < 2N`: no mixed signs, negatives exactly
/// where expected, the closed-form count, and return to `y_{τ^{-1}(i)}`.
pub fn tropical_report(family: &Family) -> Result<VerificationReport> {
    let start = Instant::now();
    let half = family.half_period();
    let traj = run(
        &Seed::tropical(build_quiver(family)),
        &MutationSchedule::for_family(family),
        half as usize,
    )?;
    let mut rep = VerificationReport::new("tropical", family);
    let mut negatives = 0i64;
    for u in 0..half {
        for &v in traj.schedule().at(u) {
            let t = traj.coeff(u, v)?.as_tropical().expect("tropical run");
            rep.checked += 1;
            let sign = t.sign();
            match sign {
                Sign::Mixed | Sign::Unit => {
                    rep.residual += 1.0;
                    rep.fail(format!("{v} at u={u} has sign {sign:?}: {t}"));
                }
                _ => {}
            }
            let neg = sign == Sign::Negative;
            negatives += neg as i64;
            if neg != expected_negative(family, v, u) {
                rep.residual += 1.0;
                rep.fail(format!("{v} at u={u}: negative={neg}, expected {}", !neg));
            }
        }
    }
    let want = expected_negative_count(family);
    rep.values.insert("negative_count".into(), negatives as f64);
    rep.values.insert("expected_negative_count".into(), want as f64);
    if negatives != want {
        rep.fail(format!("N- = {negatives}, expected {want}"));
    }
    for v in traj.initial_quiver().ids() {
        let got = traj.coeff(half, v)?.as_tropical().unwrap();
        let w = family.tau_inv(v);
        rep.checked += 1;
        if *got != TropicalMonomial::generator(w) {
            rep.residual += 1.0;
            rep.fail(format!("y at {v} after {half} steps is {got}, expected y{w}"));
        }
    }
    Ok(rep.finish(start))
}

/// `Q(2p) = σ̃^p(Q(0))` for every `p` in one schedule period, independence of
/// each composite step, and `Q(2n-2) = Q(0)`.
pub fn quiver_period_report(family: &Family) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rep = VerificationReport::new("quiver-period", family);
    let q0 = build_quiver(family);
    let sched = MutationSchedule::for_family(family);
    let mut q = q0.clone();
    for u in 0..sched.period() as i64 {
        if u % 2 == 0 {
            let p = u / 2;
            let image = q0.relabel(|v| family.sigma(v, p))?;
            rep.checked += 1;
            if !image.same_arrows(&q) {
                rep.residual += 1.0;
                rep.fail(format!("Q({u}) differs from sigma^{p} Q(0)"));
            }
        }
        match q.mutate_all(sched.at(u)) {
            Ok(next) => q = next,
            Err(e) => {
                rep.fail(format!("step {u}: {e}"));
                return Ok(rep.finish(start));
            }
        }
    }
    rep.checked += 1;
    if !q.same_arrows(&q0) {
        rep.residual += 1.0;
        rep.fail("Q(2n-2) differs from Q(0)".into());
    }
    Ok(rep.finish(start))
}

/// `μ_k μ_k = id` at every vertex of every quiver along one schedule period.
pub fn involution_report(family: &Family) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rep = VerificationReport::new("involution", family);
    let sched = MutationSchedule::for_family(family);
    let mut q = build_quiver(family);
    for u in 0..sched.period() as i64 {
        let b = q.matrix();
        for k in 0..b.size() {
            rep.checked += 1;
            if b.mutate(k).mutate(k) != *b {
                rep.residual += 1.0;
                rep.fail(format!("mu_k mu_k != id at {} in Q({u})", q.id(k)));
            }
        }
        q = q.mutate_all(sched.at(u))?;
    }
    Ok(rep.finish(start))
}

/// Rogers dilogarithm `L(x) = Li₂(x) + ½ log x log(1-x)` on `[0, 1]`.
pub fn rogers_l(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Rogers dilogarithm needs 0 <= x <= 1, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(PI * PI / 6.0);
    }
    if x > 0.5 {
        return Ok(PI * PI / 6.0 - rogers_l(1.0 - x)?);
    }
    Ok(li2_series(x) + 0.5 * x.ln() * (-x).ln_1p())
}

// Li₂(x) = Σ x^k / k², for 0 < x <= 1/2
fn li2_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    for k in 1..=200u32 {
        let term = pow / (k as f64 * k as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        pow *= x;
    }
    sum
}

/// Values `Y_i(u)` for all layers and `0 <= u < window`, assembled from
/// two numeric runs: the forward points come from `plus`, the others from
/// `minus` shifted by one step.
pub struct YSolution {
    family: Family,
    window: i64,
    values: Vec<(usize, i64, f64)>,
}

impl YSolution {
    pub fn from_runs(plus: &Trajectory, minus: &Trajectory) -> Result<Self> {
        let family = *plus.family();
        let window = family.dilog_window();
        let mut values = Vec::new();
        for layer in 1..=family.layer_count() {
            for u in 0..window {
                let y = match plus.y_tilde(layer, u) {
                    Ok(y) => y,
                    Err(Error::Parity { .. }) => minus.y_tilde(layer, u + 1)?,
                    Err(e) => return Err(e),
                };
                let y = y
                    .as_real()
                    .ok_or_else(|| Error::Domain("dilogarithm sums need positive reals".into()))?;
                values.push((layer, u, y));
            }
        }
        Ok(Self {
            family,
            window,
            values,
        })
    }

    /// Two fresh numeric runs from the given seeds of the RNG.
    pub fn random(family: &Family, seed_plus: u64, seed_minus: u64) -> Result<Self> {
        let q = build_quiver(family);
        let sched = MutationSchedule::for_family(family);
        let len = family.dilog_window() as usize + 1;
        let k = q.len();
        let plus = Seed::numeric(q.clone(), &crate::seed_engine::random_initial_values(k, seed_plus))?;
        let minus = Seed::numeric(q, &crate::seed_engine::random_initial_values(k, seed_minus))?;
        Self::from_runs(&run(&plus, &sched, len)?, &run(&minus, &sched, len)?)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn values(&self) -> &[(usize, i64, f64)] {
        &self.values
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DilogSums {
    pub s1: f64,
    pub s2: f64,
    pub terms: usize,
}

/// `(6/π²) Σ L(Y/(1+Y))` and `(6/π²) Σ L(1/(1+Y))` over the window.
pub fn dilog_sums(sol: &YSolution) -> Result<DilogSums> {
    let c = 6.0 / (PI * PI);
    let (mut s1, mut s2) = (0.0, 0.0);
    for &(_, _, y) in &sol.values {
        s1 += rogers_l(y / (1.0 + y))?;
        s2 += rogers_l(1.0 / (1.0 + y))?;
    }
    Ok(DilogSums {
        s1: c * s1,
        s2: c * s2,
        terms: sol.values.len(),
    })
}

/// Closed forms of the two sums.
pub fn expected_dilog(family: &Family) -> (i64, i64) {
    let (m, n) = (family.m as i64, family.n as i64);
    let big = family.big_n();
    match family.kind {
        FamilyKind::Sg => (4 * (m + 1) * big, 4 * (n - 1) * big),
        FamilyKind::Rsg => (
            2 * (n * m * m - m * m + 3 * m * n - 8 * m + 2 * n - 6),
            2 * (n * n * m - 6 * n * m + 11 * m + n * n - 5 * n + 6),
        ),
    }
}

/// Dilogarithm sums against their closed forms and the term count.
pub fn dilog_report(sol: &YSolution) -> Result<VerificationReport> {
    dilog_report_with(sol, &Tolerances::default())
}

pub fn dilog_report_with(sol: &YSolution, tol: &Tolerances) -> Result<VerificationReport> {
    let start = Instant::now();
    let family = *sol.family();
    let mut rep = VerificationReport::new("dilog", &family);
    let sums = dilog_sums(sol)?;
    let (e1, e2) = expected_dilog(&family);
    rep.values.insert("s1".into(), sums.s1);
    rep.values.insert("s2".into(), sums.s2);
    rep.values.insert("expected_s1".into(), e1 as f64);
    rep.values.insert("expected_s2".into(), e2 as f64);
    rep.values.insert("terms".into(), sums.terms as f64);
    for (name, got, want) in [
        ("s1", sums.s1, e1 as f64),
        ("s2", sums.s2, e2 as f64),
        ("s1+s2", sums.s1 + sums.s2, sums.terms as f64),
    ] {
        rep.checked += 1;
        let r = rel_diff(got, want);
        rep.residual(r);
        if !(r < tol.dilog) {
            rep.fail(format!("{name} = {got}, expected {want}"));
        }
    }
    Ok(rep.finish(start))
}
