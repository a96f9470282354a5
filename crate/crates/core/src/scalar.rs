//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! The solver, the formulations and the oracles are written once against
//! [`Scalar`]. Exact types (`BigRational`, `Ratio<i64>`) compare without any
//! tolerance; the float impls exist for quick experiments and compare with a
//! small absolute epsilon.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, NumAssign, NumAssignRef, NumRef, Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact fraction, the default scalar everywhere.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Signed
    + NumRef
    + NumAssign
    + NumAssignRef
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic never rounds.
    const EXACT: bool;

    /// Sign of `self` with the type's comparison tolerance applied.
    fn sign(&self) -> Ordering;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses `p/q`, an integer, or (for floats) a decimal literal.
    fn parse_scalar(s: &str) -> Option<Self>;

    /// Lossless text form; fractions are never rendered as decimals for exact types.
    fn to_fraction_string(&self) -> String {
        self.to_string()
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a.clone() * b
    }

    fn is_pos(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_neg(&self) -> bool {
        self.sign() == Ordering::Less
    }

    fn is_zero_tol(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    /// Tolerance-aware comparison `self` vs `other`.
    fn cmp_tol(&self, other: &Self) -> Ordering {
        (self.clone() - other).sign()
    }

    fn of_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits the scalar type")
    }

    fn of_i64(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("i64 fits the scalar type")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn sign(&self) -> Ordering {
        self.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        let s = s.trim();
        let r = BigRational::from_str(s).ok()?;
        if r.denom().is_zero() {
            return None;
        }
        Some(r)
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn sign(&self) -> Ordering {
        self.numer().cmp(&0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn parse_scalar(s: &str) -> Option<Self> {
        Ratio::<i64>::from_str(s.trim()).ok().filter(|r| *r.denom() != 0)
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn sign(&self) -> Ordering {
                if *self > $eps {
                    Ordering::Greater
                } else if *self < -$eps {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn parse_scalar(s: &str) -> Option<Self> {
                let s = s.trim();
                if let Some((p, q)) = s.split_once('/') {
                    let p: $t = p.trim().parse().ok()?;
                    let q: $t = q.trim().parse().ok()?;
                    if q == 0.0 {
                        return None;
                    }
                    Some(p / q)
                } else {
                    s.parse().ok()
                }
            }

            fn mul_ref(a: &Self, b: &Self) -> Self {
                a * b
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

/// Shorthand for building exact fractions in code and tests.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Exact comparison against a fraction, e.g. "x ≥ 1/3".
pub fn at_least<T: Scalar>(value: &T, num: i64, den: i64) -> bool {
    value.cmp_tol(&T::from_ratio(num, den)) != Ordering::Less
}

/// Max of a slice under the tolerance ordering; `None` when empty.
pub fn max_of<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> Option<T> {
    values.into_iter().fold(None, |best: Option<T>, v| match best {
        Some(b) if b.cmp_tol(v) != Ordering::Less => Some(b),
        _ => Some(v.clone()),
    })
}

/// Converts between scalar types through their fraction text.
pub fn convert<A: Scalar, B: Scalar>(a: &A) -> B {
    B::parse_scalar(&a.to_fraction_string())
        .unwrap_or_else(|| B::from_f64(a.to_f64()).expect("finite value"))
}

pub mod serde_fraction {
    //! Serialize exact values as fraction strings (`"7/12"`).
    use super::Scalar;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_fraction_string())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let s = String::deserialize(d)?;
        T::parse_scalar(&s).ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s:?}")))
    }
}

pub mod serde_fraction_opt {
    use super::Scalar;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Scalar, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_fraction_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Option<T>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| T::parse_scalar(&s).ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s:?}"))))
            .transpose()
    }
}

pub mod serde_fraction_vec {
    use super::Scalar;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Scalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_fraction_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| {
                T::parse_scalar(s)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s:?}")))
            })
            .collect()
    }
}
