//! Exact scalars and coordinate vectors.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in canonical form
//! (positive denominator, coprime parts). It serializes as a JSON string,
//! `"p/q"` or `"p"` for integers. Floating-point literals are rejected.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Index, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{input, Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let d = denom.into();
        assert!(!d.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), d))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> Ordering {
        self.0.numer().sign().cmp(&num_bigint::Sign::NoSign)
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Lossy conversion for summaries only; never used in predicates.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(text: &str, whole: &str) -> Result<BigInt> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(input(format!("malformed rational literal {whole:?}")));
    }
    BigInt::from_str(text).map_err(|_| input(format!("malformed rational literal {whole:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(input("empty rational literal"));
        }
        if t.contains(['.', 'e', 'E']) {
            return Err(input(format!(
                "floating-point literal {t:?} rejected; write it as a fraction such as \"1/2\""
            )));
        }
        match t.split_once('/') {
            None => Ok(Rational::from(parse_int(t, t)?)),
            Some((n, d)) => {
                let numer = parse_int(n.trim(), t)?;
                let denom = parse_int(d.trim(), t)?;
                if denom.is_zero() {
                    return Err(input(format!("zero denominator in {t:?}")));
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational string \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
        Err(E::custom(format!(
            "floating-point number {v} rejected; write it as a fraction string"
        )))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Least common multiple of the denominators, used to clear fractions.
pub(crate) fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// A point or direction with exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVector(coords.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        RVector(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis vector, scaled by `sign`.
    pub fn unit(dim: usize, i: usize, sign: i64) -> Self {
        let mut v = RVector::zeros(dim);
        v.0[i] = Rational::from_int(sign);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Inner product. Panics on mismatched dimensions; public entry points
    /// check dimensions before reaching here.
    pub fn dot(&self, other: &RVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Rational) -> RVector {
        RVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &RVector) -> RVector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVector) -> RVector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RVector {
        RVector(self.0.iter().map(|a| -a).collect())
    }

    /// True when `self = c * other` for some rational `c > 0`.
    pub fn is_positive_multiple_of(&self, other: &RVector) -> bool {
        if self.dim() != other.dim() || self.is_zero() || other.is_zero() {
            return false;
        }
        let mut ratio: Option<Rational> = None;
        for (a, b) in self.0.iter().zip(&other.0) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, false) => {
                    let r = a / b;
                    if !r.is_positive() {
                        return false;
                    }
                    match &ratio {
                        Some(prev) if *prev != r => return false,
                        Some(_) => {}
                        None => ratio = Some(r),
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Checks that every vector has dimension `dim`.
pub(crate) fn check_dims<'a>(
    dim: usize,
    vectors: impl IntoIterator<Item = &'a RVector>,
    what: &str,
) -> Result<()> {
    for v in vectors {
        if v.dim() != dim {
            return Err(input(format!(
                "{what}: expected dimension {dim}, found a vector of dimension {}",
                v.dim()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(q("2/4"), Rational::new(1, 2));
        assert_eq!(q("3"), q("3/1"));
        assert_eq!(q("-6/-4"), q("3/2"));
        assert_eq!(q("4/-8").to_string(), "-1/2");
        assert_eq!(q("+7").to_string(), "7");
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for bad in ["0.5", "1e3", "", "1/0", "a/2", "1//2", "--1", "1/"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad} should fail");
        }
        let msg = "0.5".parse::<Rational>().unwrap_err().to_string();
        assert!(msg.contains("fraction"));
    }

    #[test]
    fn json_accepts_integers_and_strings() {
        let v: Vec<Rational> = serde_json::from_str(r#"["1/2", 3, "-4"]"#).unwrap();
        assert_eq!(v, vec![q("1/2"), q("3"), q("-4")]);
        assert!(serde_json::from_str::<Rational>("0.5").is_err());
        assert_eq!(serde_json::to_string(&q("-3/9")).unwrap(), r#""-1/3""#);
    }

    #[test]
    fn positive_multiples() {
        let a = RVector::from_ints(&[1, 0, 2]);
        assert!(a.scale(&q("5/3")).is_positive_multiple_of(&a));
        assert!(!a.neg().is_positive_multiple_of(&a));
        assert!(!RVector::from_ints(&[1, 1, 2]).is_positive_multiple_of(&a));
        assert!(!RVector::zeros(3).is_positive_multiple_of(&a));
    }

    #[test]
    fn dot_is_exact() {
        let a = RVector::new(vec![q("1/3"), q("1/6")]);
        let b = RVector::from_ints(&[3, 6]);
        assert_eq!(a.dot(&b), q("2"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn display_parse_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
                let r = Rational::new(n, d);
                let back: Rational = r.to_string().parse().unwrap();
                prop_assert_eq!(&back, &r);
                let json = serde_json::to_string(&r).unwrap();
                let back: Rational = serde_json::from_str(&json).unwrap();
                prop_assert_eq!(back, r);
            }
        }
    }
}
