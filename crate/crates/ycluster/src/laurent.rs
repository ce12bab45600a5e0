//! Sparse multivariate Laurent polynomials over ℤ with exact division.
//!
//! Terms are kept in a map ordered by a graded-lex monomial order on ℤⁿ
//! (total degree first, then lexicographic). That order is compatible with
//! multiplication on Laurent monomials, which is all long division needs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector with its total degree cached for ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: i64,
    exps: Vec<i32>,
}

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        let degree = exps.iter().map(|&e| e as i64).sum();
        Self { degree, exps }
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        Self {
            degree: self.degree - other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::unit(nvars), c);
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<i32>, c: BigInt) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(exps), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, BigInt)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.exps.iter().all(|&e| e >= 0))
    }

    /// A single term, possibly with coefficient other than ±1.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "Laurent polynomials over different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(mm, cc)| (mm.add(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact quotient `self / den`.
    ///
    /// Long division against the leading term of `den`. Every quotient
    /// monomial must fall in the exponent box implied by the Newton polytopes
    /// (`min(self) - min(den)` to `max(self) - max(den)` per variable), which
    /// bounds the loop when the division is not exact. The product is
    /// re-checked before returning.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        self.check_vars(den);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some((dm, dc)) = den.as_monomial() {
            let mut out = Self::zero(self.nvars);
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(Error::NonExactDivision(format!(
                        "coefficient {c} not divisible by {dc}"
                    )));
                }
                out.terms.insert(m.sub(dm), q);
            }
            return Ok(out);
        }

        let (lo_n, hi_n) = self.exponent_box();
        let (lo_d, hi_d) = den.exponent_box();
        let lo: Vec<i32> = lo_n.iter().zip(&lo_d).map(|(a, b)| a - b).collect();
        let hi: Vec<i32> = hi_n.iter().zip(&hi_d).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::NonExactDivision("Newton polytope mismatch".into()));
        }

        let (ld_m, ld_c) = den.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.sub(&ld_m);
            let in_box = qm
                .exps
                .iter()
                .zip(lo.iter().zip(&hi))
                .all(|(e, (l, h))| l <= e && e <= h);
            if !in_box {
                return Err(Error::NonExactDivision(format!(
                    "quotient term {:?} outside the exponent box",
                    qm.exps
                )));
            }
            let (qc, r) = rc.div_rem(&ld_c);
            if !r.is_zero() {
                return Err(Error::NonExactDivision(format!(
                    "coefficient {rc} not divisible by {ld_c}"
                )));
            }
            for (dm, dc) in &den.terms {
                rem.add_term(dm.add(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        if &quot.mul(den) != self {
            return Err(Error::NonExactDivision("product check failed".into()));
        }
        Ok(quot)
    }

    /// Per-variable minimum and maximum exponent over the support.
    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let mut lo = vec![i32::MAX; self.nvars];
        let mut hi = vec![i32::MIN; self.nvars];
        for m in self.terms.keys() {
            for (j, &e) in m.exps.iter().enumerate() {
                lo[j] = lo[j].min(e);
                hi[j] = hi[j].max(e);
            }
        }
        (lo, hi)
    }

    /// Substitute 1 for every variable in `vars`; the ring keeps its arity.
    pub fn specialize_ones(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.exps.clone();
            for &v in vars {
                e[v] = 0;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Floating-point evaluation.
    pub fn eval(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
                m.exps
                    .iter()
                    .zip(point)
                    .fold(c, |acc, (&e, &x)| acc * x.powi(e))
            })
            .sum()
    }

    /// True when every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let vars: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(j, &e)| if e == 1 { format!("x{j}") } else { format!("x{j}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: Vec<i32>,
    #[serde(with = "crate::json")]
    coefficient: BigInt,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    nvars: usize,
    terms: Vec<TermRecord>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRecord {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRecord {
                    exponents: m.exps.clone(),
                    coefficient: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = PolyRecord::deserialize(d)?;
        if rec.terms.iter().any(|t| t.exponents.len() != rec.nvars) {
            return Err(serde::de::Error::custom("exponent vector length mismatch"));
        }
        Ok(LaurentPoly::from_terms(
            rec.nvars,
            rec.terms.into_iter().map(|t| (t.exponents, t.coefficient)),
        ))
    }
}
