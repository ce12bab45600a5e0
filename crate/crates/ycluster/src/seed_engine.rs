//! Seeds, seed mutation, the periodic schedule and trajectories.
//!
//! Time runs over mutation steps `u`: the snapshot at `u` is the seed before
//! step `u` is applied. A layer value `ỹ_i(u)` is read at the vertex of layer
//! `i` mutated at `u`; `x̃_i(v)` is read at the vertex of layer `i` mutated at
//! `v + d_i`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::laurent::{LaurentPoly, Monomial};
use crate::quiver::{build_quiver, ExchangeMatrix, LabeledQuiver, VertexId};
use crate::semifield::{Coeff, SemifieldKind, TropicalMonomial};

/// Default seed of the random initial values.
pub const DEFAULT_SEED: u64 = 0x5eed_2010;

/// How cluster variables are laid out in the Laurent ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterLayout {
    /// Variables `x_1..x_k` only.
    Plain,
    /// Variables `x_1..x_k` followed by `y_1..y_k` (principal coefficients).
    Principal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    quiver: LabeledQuiver,
    cluster: Option<(ClusterLayout, Vec<Arc<LaurentPoly>>)>,
    coeffs: Vec<Coeff>,
}

impl Seed {
    /// Coefficients only; cluster variables absent.
    pub fn coefficients(quiver: LabeledQuiver, coeffs: Vec<Coeff>) -> Result<Self> {
        let kind = check_coeffs(&quiver, &coeffs)?;
        if kind == SemifieldKind::Trivial {
            return Err(Error::Domain("a trivial-coefficient seed needs cluster variables".into()));
        }
        Ok(Self {
            quiver,
            cluster: None,
            coeffs,
        })
    }

    /// Positive real coefficients.
    pub fn numeric(quiver: LabeledQuiver, values: &[f64]) -> Result<Self> {
        let coeffs = values.iter().map(|&x| Coeff::real(x)).collect::<Result<Vec<_>>>()?;
        Self::coefficients(quiver, coeffs)
    }

    /// Tropical coefficients `y_v = [y_v]`, no cluster variables.
    pub fn tropical(quiver: LabeledQuiver) -> Self {
        let coeffs = quiver
            .ids()
            .map(|v| Coeff::Tropical(TropicalMonomial::generator(v)))
            .collect();
        Self {
            quiver,
            cluster: None,
            coeffs,
        }
    }

    /// Initial cluster variables with trivial coefficients.
    pub fn symbolic(quiver: LabeledQuiver) -> Self {
        let k = quiver.len();
        let cluster = (0..k).map(|a| Arc::new(LaurentPoly::var(k, a))).collect();
        Self {
            coeffs: vec![Coeff::Trivial; k],
            cluster: Some((ClusterLayout::Plain, cluster)),
            quiver,
        }
    }

    /// Initial cluster variables with principal (tropical) coefficients.
    pub fn principal(quiver: LabeledQuiver) -> Self {
        let k = quiver.len();
        let cluster = (0..k).map(|a| Arc::new(LaurentPoly::var(2 * k, a))).collect();
        let coeffs = quiver
            .ids()
            .map(|v| Coeff::Tropical(TropicalMonomial::generator(v)))
            .collect();
        Self {
            quiver,
            cluster: Some((ClusterLayout::Principal, cluster)),
            coeffs,
        }
    }

    pub fn quiver(&self) -> &LabeledQuiver {
        &self.quiver
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn cluster(&self) -> Option<&[Arc<LaurentPoly>]> {
        self.cluster.as_ref().map(|(_, c)| c.as_slice())
    }

    pub fn kind(&self) -> SemifieldKind {
        self.coeffs.first().map_or(SemifieldKind::Trivial, Coeff::kind)
    }

    pub fn coeff(&self, v: VertexId) -> Result<&Coeff> {
        Ok(&self.coeffs[self.quiver.index(v)?])
    }

    /// Seed mutation at `k`.
    pub fn mutate(&self, k: VertexId) -> Result<Self> {
        let ki = self.quiver.index(k)?;
        let b = self.quiver.matrix();
        let yk = &self.coeffs[ki];
        let one_plus = yk.one_plus();

        let mut coeffs = self.coeffs.clone();
        for (i, c) in coeffs.iter_mut().enumerate() {
            if i == ki {
                *c = yk.inv();
                continue;
            }
            let bki = b.get(ki, i) as i64;
            if bki > 0 {
                let f = yk.mul(&one_plus.inv())?.pow(bki);
                *c = c.mul(&f)?;
            } else if bki < 0 {
                *c = c.mul(&one_plus.pow(-bki))?;
            }
        }

        let cluster = match &self.cluster {
            None => None,
            Some((layout, xs)) => {
                let new = self.exchange(*layout, xs, ki, yk, &one_plus)?;
                let mut xs = xs.clone();
                xs[ki] = Arc::new(new);
                Some((*layout, xs))
            }
        };

        Ok(Self {
            quiver: self.quiver.mutate(k)?,
            cluster,
            coeffs,
        })
    }

    fn exchange(
        &self,
        layout: ClusterLayout,
        xs: &[Arc<LaurentPoly>],
        ki: usize,
        yk: &Coeff,
        one_plus: &Coeff,
    ) -> Result<LaurentPoly> {
        let b = self.quiver.matrix();
        let nvars = xs[ki].nvars();
        let mut pos = LaurentPoly::one(nvars);
        let mut neg = LaurentPoly::one(nvars);
        for j in 0..b.size() {
            let bjk = b.get(j, ki);
            if bjk > 0 {
                pos = pos.mul(&xs[j].pow(bjk as u32));
            } else if bjk < 0 {
                neg = neg.mul(&xs[j].pow((-bjk) as u32));
            }
        }
        let (num, den_mono) = match (layout, yk) {
            (ClusterLayout::Plain, Coeff::Trivial) => (pos.add(&neg), None),
            (ClusterLayout::Principal, Coeff::Tropical(t)) => {
                let yk = self.embed(t, nvars)?;
                let den = match one_plus {
                    Coeff::Tropical(o) => self.embed(o, nvars)?,
                    _ => unreachable!("tropical one_plus"),
                };
                (pos.mul_term(&yk, &BigInt::one()).add(&neg), Some(den))
            }
            _ => {
                return Err(Error::Domain(format!(
                    "cluster variables need trivial or principal tropical coefficients, got {}",
                    yk.kind().name()
                )))
            }
        };
        let num = match den_mono {
            Some(m) => num.div_exact(&LaurentPoly::monomial(m.exps().to_vec(), BigInt::one()))?,
            None => num,
        };
        num.div_exact(&xs[ki])
    }

    /// A tropical monomial as a Laurent monomial in the `y` block.
    fn embed(&self, t: &TropicalMonomial, nvars: usize) -> Result<Monomial> {
        let k = self.quiver.len();
        let mut e = vec![0i32; nvars];
        for (v, x) in t.exponents() {
            let idx = self.quiver.index(*v)?;
            e[k + idx] = x
                .to_i32()
                .ok_or_else(|| Error::Domain(format!("exponent {x} too large for the Laurent ring")))?;
        }
        Ok(Monomial::new(e))
    }
}

fn check_coeffs(quiver: &LabeledQuiver, coeffs: &[Coeff]) -> Result<SemifieldKind> {
    if coeffs.len() != quiver.len() {
        return Err(Error::Domain(format!(
            "{} coefficients for {} vertices",
            coeffs.len(),
            quiver.len()
        )));
    }
    let kind = coeffs.first().map_or(SemifieldKind::Trivial, Coeff::kind);
    if coeffs.iter().any(|c| c.kind() != kind) {
        return Err(Error::Domain("coefficients from different semifields".into()));
    }
    Ok(kind)
}

/// Uniform draws from `[0.5, 2.0]`, reproducible from `seed`.
pub fn random_initial_values(k: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| rng.gen_range(0.5..=2.0)).collect()
}

/// The periodic sequence of composite mutations of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationSchedule {
    pub family: Family,
    pub steps: Vec<Vec<VertexId>>,
}

impl MutationSchedule {
    pub fn for_family(family: &Family) -> Self {
        Self {
            family: *family,
            steps: (0..family.schedule_period()).map(|u| family.step(u)).collect(),
        }
    }

    pub fn period(&self) -> usize {
        self.steps.len()
    }

    pub fn at(&self, u: i64) -> &[VertexId] {
        &self.steps[u.rem_euclid(self.period() as i64) as usize]
    }
}

#[derive(Clone, Debug)]
struct Snapshot {
    matrix: ExchangeMatrix,
    coeffs: Vec<Coeff>,
    cluster: Option<Vec<Arc<LaurentPoly>>>,
}

/// Seeds at `u = 0..=u_max` along a schedule.
#[derive(Clone, Debug)]
pub struct Trajectory {
    family: Family,
    schedule: MutationSchedule,
    quiver0: LabeledQuiver,
    layout: Option<ClusterLayout>,
    snaps: Vec<Snapshot>,
}

/// Apply the schedule from `u = 0` through step `u_max - 1`.
pub fn run(seed: &Seed, schedule: &MutationSchedule, u_max: usize) -> Result<Trajectory> {
    let mut cur = seed.clone();
    let snap = |s: &Seed| Snapshot {
        matrix: s.quiver.matrix().clone(),
        coeffs: s.coeffs.clone(),
        cluster: s.cluster.as_ref().map(|(_, c)| c.clone()),
    };
    let mut snaps = Vec::with_capacity(u_max + 1);
    snaps.push(snap(&cur));
    for u in 0..u_max {
        let ks = schedule.at(u as i64);
        cur.quiver.check_independent(ks)?;
        for &k in ks {
            cur = cur.mutate(k)?;
        }
        snaps.push(snap(&cur));
    }
    Ok(Trajectory {
        family: schedule.family,
        schedule: schedule.clone(),
        quiver0: seed.quiver.clone(),
        layout: seed.cluster.as_ref().map(|(l, _)| *l),
        snaps,
    })
}

/// Convenience: the family's own quiver and schedule.
pub fn run_family(family: &Family, make_seed: impl FnOnce(LabeledQuiver) -> Result<Seed>, u_max: usize) -> Result<Trajectory> {
    let seed = make_seed(build_quiver(family))?;
    run(&seed, &MutationSchedule::for_family(family), u_max)
}

impl Trajectory {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn schedule(&self) -> &MutationSchedule {
        &self.schedule
    }

    pub fn u_max(&self) -> i64 {
        self.snaps.len() as i64 - 1
    }

    pub fn kind(&self) -> SemifieldKind {
        self.snaps[0].coeffs.first().map_or(SemifieldKind::Trivial, Coeff::kind)
    }

    pub fn is_symbolic(&self) -> bool {
        self.layout.is_some()
    }

    pub fn is_principal(&self) -> bool {
        self.layout == Some(ClusterLayout::Principal)
    }

    pub fn initial_quiver(&self) -> &LabeledQuiver {
        &self.quiver0
    }

    fn snap(&self, u: i64) -> Result<&Snapshot> {
        if u < 0 || u > self.u_max() {
            return Err(Error::InsufficientLength {
                needed: u,
                have: self.u_max(),
            });
        }
        Ok(&self.snaps[u as usize])
    }

    pub fn matrix(&self, u: i64) -> Result<&ExchangeMatrix> {
        Ok(&self.snap(u)?.matrix)
    }

    /// The quiver at time `u` with the initial labels.
    pub fn quiver(&self, u: i64) -> Result<LabeledQuiver> {
        let mut q = self.quiver0.clone();
        let target = self.matrix(u)?;
        // labels never move, only arrows
        for a in 0..q.len() {
            for b in a + 1..q.len() {
                let x = target.get(a, b);
                q = set_entry(q, a, b, x);
            }
        }
        Ok(q)
    }

    pub fn coeff(&self, u: i64, v: VertexId) -> Result<&Coeff> {
        let idx = self.quiver0.index(v)?;
        Ok(&self.snap(u)?.coeffs[idx])
    }

    pub fn coeffs(&self, u: i64) -> Result<&[Coeff]> {
        Ok(&self.snap(u)?.coeffs)
    }

    pub fn cluster_var(&self, u: i64, v: VertexId) -> Result<&LaurentPoly> {
        let idx = self.quiver0.index(v)?;
        let snap = self.snap(u)?;
        snap.cluster
            .as_ref()
            .map(|c| c[idx].as_ref())
            .ok_or(Error::MissingSymbolicRun)
    }

    /// `ỹ_i(u)`.
    pub fn y_tilde(&self, layer: usize, u: i64) -> Result<&Coeff> {
        let (v, t) = label_g_prime(&self.family, layer, u)?;
        self.coeff(t, v)
    }

    /// `x̃_i(v)`.
    pub fn x_tilde(&self, layer: usize, v: i64) -> Result<&LaurentPoly> {
        if !self.is_symbolic() {
            return Err(Error::MissingSymbolicRun);
        }
        let (vert, t) = label_g(&self.family, layer, v)?;
        self.cluster_var(t, vert)
    }

    /// `x̃_i(v)` with every `x` set to 1 (principal runs only).
    pub fn f_polynomial(&self, layer: usize, v: i64) -> Result<LaurentPoly> {
        if !self.is_principal() {
            return Err(Error::MissingSymbolicRun);
        }
        let x = self.x_tilde(layer, v)?;
        let k = self.quiver0.len();
        Ok(x.specialize_ones(&(0..k).collect::<Vec<_>>()))
    }
}

fn set_entry(q: LabeledQuiver, a: usize, b: usize, x: i32) -> LabeledQuiver {
    let mut arrows = q.arrows();
    let (ia, ib) = (q.id(a), q.id(b));
    arrows.retain(|&(f, t, _)| !((f == ia && t == ib) || (f == ib && t == ia)));
    if x > 0 {
        arrows.push((ia, ib, x));
    } else if x < 0 {
        arrows.push((ib, ia, -x));
    }
    LabeledQuiver::new(q.vertices().to_vec(), &arrows).expect("relabelled quiver")
}

/// `g'`: layer `i` at time `u` to the vertex mutated there.
pub fn label_g_prime(family: &Family, layer: usize, u: i64) -> Result<(VertexId, i64)> {
    family
        .mutation_vertex(layer, u)
        .map(|v| (v, u))
        .ok_or(Error::Parity { layer, time: u })
}

/// `g`: layer `i` at time `v` to the vertex mutated at `v + d_i`.
pub fn label_g(family: &Family, layer: usize, v: i64) -> Result<(VertexId, i64)> {
    let t = v + family.d(layer);
    family
        .mutation_vertex(layer, t)
        .map(|x| (x, t))
        .ok_or(Error::Parity { layer, time: v })
}

/// Inverse of `g'`: a vertex mutated at `u` to its layer and time.
pub fn label_g_prime_inv(family: &Family, v: VertexId, u: i64) -> Result<(usize, i64)> {
    family.info(v)?;
    let layer = v.ip as usize;
    if family.mutation_vertex(layer, u) == Some(v) {
        Ok((layer, u))
    } else {
        Err(Error::Parity { layer, time: u })
    }
}

/// Inverse of `g`.
pub fn label_g_inv(family: &Family, v: VertexId, u: i64) -> Result<(usize, i64)> {
    let (layer, t) = label_g_prime_inv(family, v, u)?;
    Ok((layer, t - family.d(layer)))
}

/// The relabelled values of one layer point, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct LayerValue {
    pub u: i64,
    pub layer: usize,
    pub vertex: String,
    pub y: Coeff,
}

#[derive(Clone, Debug, Serialize)]
pub struct TrajectoryReport {
    pub family: Family,
    pub semifield: SemifieldKind,
    pub u_max: i64,
    pub schedule: Vec<Vec<String>>,
    pub tau: Vec<(String, String)>,
    pub omega: Vec<(usize, usize)>,
    pub values: Vec<LayerValue>,
}

impl Trajectory {
    pub fn report(&self) -> TrajectoryReport {
        let f = &self.family;
        let mut values = Vec::new();
        for u in 0..=self.u_max() {
            for layer in 1..=f.layer_count() {
                if let Ok(y) = self.y_tilde(layer, u) {
                    values.push(LayerValue {
                        u,
                        layer,
                        vertex: f.mutation_vertex(layer, u).unwrap().to_string(),
                        y: y.clone(),
                    });
                }
            }
        }
        TrajectoryReport {
            family: *f,
            semifield: self.kind(),
            u_max: self.u_max(),
            schedule: self
                .schedule
                .steps
                .iter()
                .map(|s| s.iter().map(|v| v.to_string()).collect())
                .collect(),
            tau: f
                .vertices()
                .iter()
                .map(|v| (v.id.to_string(), f.tau(v.id).to_string()))
                .collect(),
            omega: (1..=f.layer_count()).map(|l| (l, f.omega(l))).collect(),
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::Sign;

    fn a2() -> LabeledQuiver {
        let mut b = ExchangeMatrix::zeros(2);
        b.set(0, 1, 1);
        LabeledQuiver::from_matrix(b)
    }

    #[test]
    fn a2_pentagon_numeric() {
        // alternating mutations of A2 return the coefficients after five steps
        // with the two labels swapped
        let seed = Seed::numeric(a2(), &[0.7, 1.9]).unwrap();
        let (v1, v2) = (VertexId::new(1, 1), VertexId::new(2, 1));
        let mut s = seed.clone();
        for k in [v1, v2, v1, v2, v1] {
            s = s.mutate(k).unwrap();
        }
        let y = |s: &Seed, v| s.coeff(v).unwrap().as_real().unwrap();
        assert!((y(&s, v1) - y(&seed, v2)).abs() < 1e-12);
        assert!((y(&s, v2) - y(&seed, v1)).abs() < 1e-12);
    }

    #[test]
    fn mutation_is_an_involution_on_seeds() {
        let q = build_quiver(&Family::sg(1, 4).unwrap());
        let s = Seed::principal(q);
        for v in s.quiver().ids().collect::<Vec<_>>() {
            let back = s.mutate(v).unwrap().mutate(v).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn principal_exchange_a2() {
        // x1' = (y1 + x2) / x1 for 1 -> 2 (B21 = -1)
        let s = Seed::principal(a2());
        let t = s.mutate(VertexId::new(1, 1)).unwrap();
        let x = t.cluster().unwrap()[0].as_ref().clone();
        let want = LaurentPoly::from_terms(
            4,
            [(vec![-1, 0, 1, 0], BigInt::one()), (vec![-1, 1, 0, 0], BigInt::one())],
        );
        assert_eq!(x, want);
    }

    #[test]
    fn tropical_signs_are_never_mixed_on_a_short_run() {
        let f = Family::rsg(1, 5).unwrap();
        let traj = run_family(&f, |q| Ok(Seed::tropical(q)), 10).unwrap();
        for u in 0..=traj.u_max() {
            for c in traj.coeffs(u).unwrap() {
                assert_ne!(c.as_tropical().unwrap().sign(), Sign::Mixed);
            }
        }
    }

    #[test]
    fn random_values_are_reproducible_and_in_range() {
        let a = random_initial_values(20, 7);
        assert_eq!(a, random_initial_values(20, 7));
        assert_ne!(a, random_initial_values(20, 8));
        assert!(a.iter().all(|&x| (0.5..=2.0).contains(&x)));
    }

    #[test]
    fn label_maps_invert() {
        let f = Family::sg(2, 5).unwrap();
        for layer in 1..=f.layer_count() {
            for u in 0..20 {
                if let Ok((v, t)) = label_g_prime(&f, layer, u) {
                    assert_eq!(label_g_prime_inv(&f, v, t).unwrap(), (layer, u));
                }
                if let Ok((v, t)) = label_g(&f, layer, u) {
                    assert_eq!(label_g_inv(&f, v, t).unwrap(), (layer, u));
                }
            }
        }
    }

    #[test]
    fn label_domain_for_m1_matches_stated_parity() {
        // forward points (i, u): i + u odd for i <= n, n + u odd for i = n + 1,
        // and the shifted set: i + u even when n is even, u even at i = 1 when n is odd
        for n in 4..=9u32 {
            let f = Family::sg(1, n).unwrap();
            for u in -10i64..30 {
                for i in 1..=(n as usize + 1) {
                    let lhs = label_g_prime(&f, i, u).is_ok();
                    let idx = if i <= n as usize { i as i64 } else { n as i64 };
                    assert_eq!(lhs, (idx + u).rem_euclid(2) == 1, "n={n} i={i} u={u}");
                    let shifted = label_g(&f, i, u).is_ok();
                    let want = if n % 2 == 0 {
                        (idx + u).rem_euclid(2) == 0
                    } else if i == 1 {
                        u.rem_euclid(2) == 0
                    } else {
                        (idx + u).rem_euclid(2) == 0
                    };
                    assert_eq!(shifted, want, "shifted n={n} i={i} u={u}");
                }
            }
        }
    }

    #[test]
    fn cluster_values_need_a_symbolic_run() {
        let f = Family::rsg(1, 4).unwrap();
        let traj = run_family(&f, |q| Ok(Seed::tropical(q)), 4).unwrap();
        assert_eq!(traj.x_tilde(1, 0).unwrap_err(), Error::MissingSymbolicRun);
    }
}
