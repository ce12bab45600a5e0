use std::f64::consts::PI;

use num_bigint::BigInt;
use proptest::prelude::*;

use ycluster::family::{Family, FamilyKind};
use ycluster::laurent::LaurentPoly;
use ycluster::mutclass::find_dynkin;
use ycluster::quiver::{build_quiver, canonical_form, dynkin_type, ExchangeMatrix, LabeledQuiver, VertexId};
use ycluster::seed_engine::{label_g, label_g_inv, label_g_prime, label_g_prime_inv, random_initial_values, Seed};
use ycluster::semifield::{Coeff, TropicalMonomial};
use ycluster::ysystem_verify::{dilog_sums, expected_dilog, rogers_l, YSolution};

fn vertex() -> impl Strategy<Value = VertexId> {
    (1u32..4, 1u32..4).prop_map(|(i, ip)| VertexId { i, ip })
}

fn tropical() -> impl Strategy<Value = TropicalMonomial> {
    prop::collection::vec((vertex(), -6i64..7), 0..5)
        .prop_map(|es| TropicalMonomial::from_exponents(es.into_iter().map(|(v, e)| (v, BigInt::from(e)))))
}

fn positive() -> impl Strategy<Value = Coeff> {
    (0.05f64..20.0).prop_map(|x| Coeff::real(x).unwrap())
}

const NVARS: usize = 3;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..3, NVARS), -4i64..5), 1..5)
        .prop_map(|ts| LaurentPoly::from_terms(NVARS, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn skew(size: usize) -> impl Strategy<Value = ExchangeMatrix> {
    prop::collection::vec(-2i32..3, size * (size - 1) / 2).prop_map(move |upper| {
        let mut b = ExchangeMatrix::zeros(size);
        let mut it = upper.into_iter();
        for a in 0..size {
            for c in a + 1..size {
                b.set(a, c, it.next().unwrap());
            }
        }
        b
    })
}

fn permuted(b: &ExchangeMatrix, perm: &[usize]) -> ExchangeMatrix {
    let mut out = ExchangeMatrix::zeros(b.size());
    for a in 0..b.size() {
        for c in a + 1..b.size() {
            out.set(perm[a], perm[c], b.get(a, c));
        }
    }
    out
}

fn matrix_and_perm() -> impl Strategy<Value = (ExchangeMatrix, Vec<usize>)> {
    (2usize..8).prop_flat_map(|n| (skew(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
}

fn family() -> impl Strategy<Value = Family> {
    (prop_oneof![Just(FamilyKind::Sg), Just(FamilyKind::Rsg)], 1u32..4, 4u32..9)
        .prop_map(|(k, m, n)| Family::new(k, m, n).unwrap())
}

// Li₂(x) = -∫₀ˣ log(1-t)/t dt by composite Simpson; the integrand tends to 1 at 0.
fn li2_quadrature(x: f64) -> f64 {
    let f = |t: f64| if t == 0.0 { 1.0 } else { -(-t).ln_1p() / t };
    let n = 20_000;
    let h = x / n as f64;
    let mut s = f(0.0) + f(x);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    s * h / 3.0
}

proptest! {
    #[test]
    fn tropical_semifield_laws(a in tropical(), b in tropical(), c in tropical()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.oplus(&b), b.oplus(&a));
        prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
        prop_assert_eq!(a.mul(&b.oplus(&c)), a.mul(&b).oplus(&a.mul(&c)));
        prop_assert!(a.mul(&a.inv()).is_one());
        prop_assert_eq!(a.oplus(&a), a.clone());
        prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        prop_assert_eq!(a.pow(-2), a.inv().mul(&a.inv()));
    }

    #[test]
    fn positive_real_semifield_laws(a in positive(), b in positive(), c in positive()) {
        let close = |x: &Coeff, y: &Coeff| (x.as_real().unwrap() / y.as_real().unwrap() - 1.0).abs() < 1e-12;
        let lhs = a.mul(&b.oplus(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().oplus(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs));
        prop_assert!(close(&a.mul(&a.inv()).unwrap(), &Coeff::real(1.0).unwrap()));
        prop_assert!(a.one_plus().as_real().unwrap() > 1.0);
    }

    #[test]
    fn laurent_multiplication_divides_back(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        let p = a.mul(&b);
        prop_assert_eq!(p.div_exact(&b).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let pt = [0.7, 1.3, 2.1];
        let r = (p.eval(&pt) - a.eval(&pt) * b.eval(&pt)).abs();
        prop_assert!(r <= 1e-9 * (1.0 + p.eval(&pt).abs()));
    }

    #[test]
    fn laurent_json_round_trip(a in laurent()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn tropical_json_round_trip(a in tropical()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: TropicalMonomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn matrix_mutation_is_an_involution((b, _) in matrix_and_perm(), k in 0usize..8) {
        let k = k % b.size();
        let once = b.mutate(k);
        prop_assert!(once.is_skew_symmetric());
        prop_assert_eq!(once.mutate(k), b.clone());
        for j in 0..b.size() {
            prop_assert_eq!(once.get(k, j), -b.get(k, j));
        }
    }

    #[test]
    fn canonical_form_ignores_labels((b, perm) in matrix_and_perm()) {
        let p = permuted(&b, &perm);
        prop_assert_eq!(canonical_form(&b), canonical_form(&p));
        prop_assert_eq!(dynkin_type(&b), dynkin_type(&p));
        // and commutes with mutation
        prop_assert_eq!(canonical_form(&b.mutate(0)), canonical_form(&p.mutate(perm[0])));
    }

    #[test]
    fn quiver_json_round_trip((b, _) in matrix_and_perm()) {
        let q = LabeledQuiver::from_matrix(b);
        let text = serde_json::to_string(&q).unwrap();
        let back: LabeledQuiver = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, q);
    }

    #[test]
    fn family_quivers_round_trip_through_json(f in family()) {
        let q = build_quiver(&f);
        let back: LabeledQuiver = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn seed_mutation_is_an_involution(f in family(), rng in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let q = build_quiver(&f);
        let seed = Seed::numeric(q.clone(), &random_initial_values(q.len(), rng)).unwrap();
        let k = q.id(pick.index(q.len()));
        let back = seed.mutate(k).unwrap().mutate(k).unwrap();
        prop_assert_eq!(back.quiver(), seed.quiver());
        for (x, y) in back.coeffs().iter().zip(seed.coeffs()) {
            prop_assert!((x.as_real().unwrap() / y.as_real().unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn label_maps_invert(f in family(), pick in any::<prop::sample::Index>(), u in -30i64..30) {
        let layer = pick.index(f.layer_count()) + 1;
        if let Ok((v, t)) = label_g_prime(&f, layer, u) {
            prop_assert_eq!(label_g_prime_inv(&f, v, t).unwrap(), (layer, u));
        }
        if let Ok((v, t)) = label_g(&f, layer, u) {
            prop_assert_eq!(label_g_inv(&f, v, t).unwrap(), (layer, u));
        }
    }

    #[test]
    fn explored_count_is_monotone(lo in 1usize..300, extra in 0usize..300) {
        let q = build_quiver(&Family::sg(2, 4).unwrap());
        let a = find_dynkin(&q, lo);
        let b = find_dynkin(&q, lo + extra);
        prop_assert!(a.explored <= b.explored);
        prop_assert!(a.explored <= lo);
        if a.found.is_some() {
            prop_assert_eq!(a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rogers_matches_quadrature(x in 0.0f64..1.0) {
        prop_assume!(x > 1e-6 && x < 1.0 - 1e-6);
        let oracle = li2_quadrature(x) + 0.5 * x.ln() * (-x).ln_1p();
        prop_assert!((rogers_l(x).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn rogers_reflection_and_five_term(x in 0.01f64..0.99, y in 0.01f64..0.99) {
        let l = |t: f64| rogers_l(t).unwrap();
        prop_assert!((l(x) + l(1.0 - x) - PI * PI / 6.0).abs() < 1e-12);
        let xy = x * y;
        let rhs = l(xy) + l(x * (1.0 - y) / (1.0 - xy)) + l(y * (1.0 - x) / (1.0 - xy));
        prop_assert!((l(x) + l(y) - rhs).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dilog_sums_do_not_depend_on_initial_values(
        kind in prop_oneof![Just(FamilyKind::Sg), Just(FamilyKind::Rsg)],
        n in 4u32..8,
        s1 in any::<u64>(),
        s2 in any::<u64>(),
    ) {
        let f = Family::new(kind, 1, n).unwrap();
        let sums = dilog_sums(&YSolution::random(&f, s1, s2).unwrap()).unwrap();
        let (e1, e2) = expected_dilog(&f);
        prop_assert!((sums.s1 / e1 as f64 - 1.0).abs() < 1e-8);
        prop_assert!((sums.s2 / e2 as f64 - 1.0).abs() < 1e-8);
    }
}
