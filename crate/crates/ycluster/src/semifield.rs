//! Coefficient semifields: trivial, tropical and positive reals.
//!
//! Values of different kinds never mix; a seed carries one kind throughout
//! and the operations here report a mismatch instead of coercing.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::VertexId;

/// Which semifield a seed's coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemifieldKind {
    Trivial,
    Tropical,
    PositiveReal,
}

impl SemifieldKind {
    pub fn name(self) -> &'static str {
        match self {
            SemifieldKind::Trivial => "trivial",
            SemifieldKind::Tropical => "tropical",
            SemifieldKind::PositiveReal => "positive-real",
        }
    }
}

impl std::str::FromStr for SemifieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(SemifieldKind::Trivial),
            "tropical" => Ok(SemifieldKind::Tropical),
            "positive-real" | "real" => Ok(SemifieldKind::PositiveReal),
            other => Err(Error::Domain(format!("unknown semifield `{other}`"))),
        }
    }
}

/// Sign of a tropical monomial: all exponents >= 0, all <= 0, all zero, or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
    Unit,
    Mixed,
}

/// A Laurent monomial in the initial coefficients, with ⊕ as the
/// componentwise minimum of exponents. Zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TropicalMonomial {
    exps: BTreeMap<VertexId, BigInt>,
}

impl TropicalMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The generator `y_v`.
    pub fn generator(v: VertexId) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(v, BigInt::one());
        Self { exps }
    }

    pub fn from_exponents<I: IntoIterator<Item = (VertexId, BigInt)>>(it: I) -> Self {
        let mut out = Self::one();
        for (v, e) in it {
            out.add_exp(v, &e);
        }
        out
    }

    fn add_exp(&mut self, v: VertexId, e: &BigInt) {
        if e.is_zero() {
            return;
        }
        let slot = self.exps.entry(v).or_insert_with(BigInt::zero);
        *slot += e;
        if slot.is_zero() {
            self.exps.remove(&v);
        }
    }

    pub fn exponent(&self, v: VertexId) -> BigInt {
        self.exps.get(&v).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero exponents in vertex order.
    pub fn exponents(&self) -> impl Iterator<Item = (&VertexId, &BigInt)> {
        self.exps.iter()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, e) in &other.exps {
            out.add_exp(*v, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|(v, e)| (*v, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let k = BigInt::from(k);
        Self {
            exps: self.exps.iter().map(|(v, e)| (*v, e * &k)).collect(),
        }
    }

    /// Tropical sum: componentwise minimum, absent exponents counting as 0.
    pub fn oplus(&self, other: &Self) -> Self {
        let mut out = Self::one();
        let keys: std::collections::BTreeSet<_> =
            self.exps.keys().chain(other.exps.keys()).copied().collect();
        for v in keys {
            let a = self.exponent(v);
            let b = other.exponent(v);
            out.add_exp(v, if a < b { &a } else { &b });
        }
        out
    }

    pub fn sign(&self) -> Sign {
        let pos = self.exps.values().any(|e| e.is_positive());
        let neg = self.exps.values().any(|e| e.is_negative());
        match (pos, neg) {
            (false, false) => Sign::Unit,
            (true, false) => Sign::Positive,
            (false, true) => Sign::Negative,
            (true, true) => Sign::Mixed,
        }
    }
}

impl fmt::Display for TropicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "y{v}^{e}")?;
        }
        Ok(())
    }
}

// JSON form: an object keyed by "(i,i')" in vertex order.
impl Serialize for TropicalMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.exps.len()))?;
        for (v, e) in &self.exps {
            map.serialize_entry(&v.to_string(), &crate::json::Big(e.clone()))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for TropicalMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, crate::json::Big> = BTreeMap::deserialize(d)?;
        let mut out = Self::one();
        for (k, crate::json::Big(e)) in raw {
            let v: VertexId = k.parse().map_err(serde::de::Error::custom)?;
            out.add_exp(v, &e);
        }
        Ok(out)
    }
}

/// A strictly positive finite real.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(x: f64) -> Result<Self> {
        if x.is_finite() && x > 0.0 {
            Ok(Self(x))
        } else {
            Err(Error::NonPositiveValue(x))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for PositiveReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(d)?;
        PositiveReal::new(x).map_err(serde::de::Error::custom)
    }
}

/// A coefficient in one of the supported semifields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Trivial,
    Tropical(TropicalMonomial),
    Real(PositiveReal),
}

impl Coeff {
    pub fn kind(&self) -> SemifieldKind {
        match self {
            Coeff::Trivial => SemifieldKind::Trivial,
            Coeff::Tropical(_) => SemifieldKind::Tropical,
            Coeff::Real(_) => SemifieldKind::PositiveReal,
        }
    }

    pub fn one(kind: SemifieldKind) -> Self {
        match kind {
            SemifieldKind::Trivial => Coeff::Trivial,
            SemifieldKind::Tropical => Coeff::Tropical(TropicalMonomial::one()),
            SemifieldKind::PositiveReal => Coeff::Real(PositiveReal(1.0)),
        }
    }

    pub fn real(x: f64) -> Result<Self> {
        PositiveReal::new(x).map(Coeff::Real)
    }

    pub fn as_tropical(&self) -> Option<&TropicalMonomial> {
        match self {
            Coeff::Tropical(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Coeff::Real(r) => Some(r.0),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::Domain(format!(
            "semifield mismatch: {} vs {}",
            self.kind().name(),
            other.kind().name()
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Coeff::Trivial, Coeff::Trivial) => Ok(Coeff::Trivial),
            (Coeff::Tropical(a), Coeff::Tropical(b)) => Ok(Coeff::Tropical(a.mul(b))),
            (Coeff::Real(a), Coeff::Real(b)) => Coeff::real(a.0 * b.0),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            Coeff::Trivial => Coeff::Trivial,
            Coeff::Tropical(a) => Coeff::Tropical(a.inv()),
            Coeff::Real(a) => Coeff::Real(PositiveReal(1.0 / a.0)),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        match self {
            Coeff::Trivial => Coeff::Trivial,
            Coeff::Tropical(a) => Coeff::Tropical(a.pow(k)),
            Coeff::Real(a) => Coeff::Real(PositiveReal(a.0.powi(k as i32))),
        }
    }

    /// Semifield addition.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Coeff::Trivial, Coeff::Trivial) => Ok(Coeff::Trivial),
            (Coeff::Tropical(a), Coeff::Tropical(b)) => Ok(Coeff::Tropical(a.oplus(b))),
            (Coeff::Real(a), Coeff::Real(b)) => Coeff::real(a.0 + b.0),
            _ => Err(self.mismatch(other)),
        }
    }

    /// `1 ⊕ self`.
    pub fn one_plus(&self) -> Self {
        match self {
            Coeff::Trivial => Coeff::Trivial,
            Coeff::Tropical(a) => Coeff::Tropical(TropicalMonomial::one().oplus(a)),
            Coeff::Real(a) => Coeff::Real(PositiveReal(1.0 + a.0)),
        }
    }
}
