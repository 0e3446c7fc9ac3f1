//! Arithmetic in the parity ring `Z[ε]/(ε² − 1)`.
//!
//! Every multiplicity and dimension in the category carries a parity
//! refinement: `a + bε` counts `a` even and `b` odd basis vectors.
//! The ring is isomorphic to `Z × Z` through `(eval_plus, eval_minus)`.
//!
//! Division by `θ = 1 + ε` is not well defined on graded values
//! (`θ·1 = θ·ε`), so [`GradedInt::theta_div_total`] only returns the
//! total dimension of a quotient.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedInt {
    one: BigInt,
    eps: BigInt,
}

impl GradedInt {
    pub fn new(one: impl Into<BigInt>, eps: impl Into<BigInt>) -> Self {
        GradedInt { one: one.into(), eps: eps.into() }
    }

    pub fn zero() -> Self {
        GradedInt::default()
    }

    pub fn one() -> Self {
        GradedInt::new(1, 0)
    }

    pub fn eps() -> Self {
        GradedInt::new(0, 1)
    }

    pub fn theta() -> Self {
        GradedInt::new(1, 1)
    }

    /// `θ^k`, which equals `2^(k-1)·θ` for `k ≥ 1`.
    pub fn theta_pow(k: u32) -> Self {
        if k == 0 {
            return GradedInt::one();
        }
        let c = BigInt::one() << (k - 1);
        GradedInt { one: c.clone(), eps: c }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GradedInt::new(n, 0)
    }

    /// Coefficient of `1`.
    pub fn one_part(&self) -> &BigInt {
        &self.one
    }

    /// Coefficient of `ε`.
    pub fn eps_part(&self) -> &BigInt {
        &self.eps
    }

    pub fn is_zero(&self) -> bool {
        self.one.is_zero() && self.eps.is_zero()
    }

    /// Total dimension (`ε ↦ 1`).
    pub fn eval_plus(&self) -> BigInt {
        &self.one + &self.eps
    }

    /// Superdimension (`ε ↦ −1`).
    pub fn eval_minus(&self) -> BigInt {
        &self.one - &self.eps
    }

    pub fn is_theta_multiple(&self) -> bool {
        self.eval_minus().is_zero()
    }

    /// Total dimension of any `ξ` with `θ^k ξ = self`.
    pub fn theta_div_total(&self, k: u32) -> Result<BigInt> {
        if k == 0 {
            return Ok(self.eval_plus());
        }
        let total = self.eval_plus();
        let modulus = BigInt::one() << k;
        if !self.is_theta_multiple() || !(&total % &modulus).is_zero() {
            return Err(Error::NotThetaDivisible { value: self.clone(), power: k });
        }
        Ok(total >> k)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        GradedInt { one: &self.one * c, eps: &self.eps * c }
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.one.is_negative() && !self.eps.is_negative()
    }
}

impl From<i64> for GradedInt {
    fn from(n: i64) -> Self {
        GradedInt::from_int(n)
    }
}

impl Add for GradedInt {
    type Output = GradedInt;
    fn add(self, rhs: GradedInt) -> GradedInt {
        GradedInt { one: self.one + rhs.one, eps: self.eps + rhs.eps }
    }
}

impl<'a> Add<&'a GradedInt> for &'a GradedInt {
    type Output = GradedInt;
    fn add(self, rhs: &GradedInt) -> GradedInt {
        GradedInt { one: &self.one + &rhs.one, eps: &self.eps + &rhs.eps }
    }
}

impl AddAssign<&GradedInt> for GradedInt {
    fn add_assign(&mut self, rhs: &GradedInt) {
        self.one += &rhs.one;
        self.eps += &rhs.eps;
    }
}

impl Sub for GradedInt {
    type Output = GradedInt;
    fn sub(self, rhs: GradedInt) -> GradedInt {
        GradedInt { one: self.one - rhs.one, eps: self.eps - rhs.eps }
    }
}

impl Neg for GradedInt {
    type Output = GradedInt;
    fn neg(self) -> GradedInt {
        GradedInt { one: -self.one, eps: -self.eps }
    }
}

impl<'a> Mul<&'a GradedInt> for &'a GradedInt {
    type Output = GradedInt;
    fn mul(self, rhs: &GradedInt) -> GradedInt {
        GradedInt {
            one: &self.one * &rhs.one + &self.eps * &rhs.eps,
            eps: &self.one * &rhs.eps + &self.eps * &rhs.one,
        }
    }
}

impl Mul for GradedInt {
    type Output = GradedInt;
    fn mul(self, rhs: GradedInt) -> GradedInt {
        &self * &rhs
    }
}

impl std::iter::Sum for GradedInt {
    fn sum<I: Iterator<Item = GradedInt>>(iter: I) -> Self {
        iter.fold(GradedInt::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for GradedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.one.is_zero(), self.eps.is_zero()) {
            (_, true) => write!(f, "{}", self.one),
            (true, false) => write!(f, "{}ε", self.eps),
            (false, false) if self.eps.is_negative() => write!(f, "{}{}ε", self.one, self.eps),
            (false, false) => write!(f, "{}+{}ε", self.one, self.eps),
        }
    }
}

// JSON form is {"one": a, "eps": b}; coefficients outside i64 are written
// as decimal strings.
fn serialize_big<S: SerializeStruct>(st: &mut S, key: &'static str, v: &BigInt) -> Result<(), S::Error> {
    match v.to_i64() {
        Some(small) => st.serialize_field(key, &small),
        None => st.serialize_field(key, &v.to_string()),
    }
}

impl Serialize for GradedInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GradedInt", 2)?;
        serialize_big(&mut st, "one", &self.one)?;
        serialize_big(&mut st, "eps", &self.eps)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BigRepr {
    Int(i64),
    Str(String),
}

impl BigRepr {
    fn into_big<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            BigRepr::Int(n) => Ok(BigInt::from(n)),
            BigRepr::Str(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for GradedInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct GradedVisitor;

        impl<'de> Visitor<'de> for GradedVisitor {
            type Value = GradedInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with integer fields \"one\" and \"eps\"")
            }

            fn visit_map<A: de::MapAccess<'de>>(self, mut map: A) -> Result<GradedInt, A::Error> {
                let mut one = None;
                let mut eps = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "one" => one = Some(map.next_value::<BigRepr>()?.into_big()?),
                        "eps" => eps = Some(map.next_value::<BigRepr>()?.into_big()?),
                        other => return Err(de::Error::unknown_field(other, &["one", "eps"])),
                    }
                }
                Ok(GradedInt {
                    one: one.ok_or_else(|| de::Error::missing_field("one"))?,
                    eps: eps.ok_or_else(|| de::Error::missing_field("eps"))?,
                })
            }
        }

        deserializer.deserialize_struct("GradedInt", &["one", "eps"], GradedVisitor)
    }
}

/// Serde adapter for a bare `BigInt` field, using the same number-or-string
/// form as [`GradedInt`] coefficients.
pub mod big_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(small) => serializer.serialize_i64(small),
            None => serializer.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        BigRepr::deserialize(deserializer)?.into_big()
    }
}
