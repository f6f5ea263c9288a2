//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Which field coefficients live in.
///
/// Any prime characteristic is accepted here; arrangement constructors that
/// need a moduli parameter outside `{0, 1}` reject `F_2` themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Largest accepted characteristic; keeps products inside `u64`.
    pub const MAX_PRIME: u64 = u32::MAX as u64;

    pub fn prime(p: u64) -> Result<Self> {
        if p > Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "field characteristic must be a prime below 2^32, got {p}"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    fn from_bigint(&self, n: &BigInt, p: u64) -> u64 {
        let r = n % BigInt::from(p);
        let r = r.to_i64().expect("residue fits");
        r.rem_euclid(p as i64) as u64
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &Rational) -> Result<Scalar> {
        match *self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let n = self.from_bigint(&q.numer(), p);
                let d = self.from_bigint(&q.denom(), p);
                if d == 0 {
                    return Err(Error::InvalidInput(format!(
                        "{q} has denominator divisible by {p}"
                    )));
                }
                let num = Scalar::Modular { value: n, modulus: p };
                let den = Scalar::Modular { value: d, modulus: p };
                Ok(&num / &den)
            }
        }
    }

    /// Parses `"3"`, `"-1/2"` and the like into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        self.from_rational(&s.parse::<Rational>()?)
    }

    /// All elements of a prime field, in the order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Modular { value: v, modulus: p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Field::Rationals);
        }
        match s.strip_prefix("Fp:").or_else(|| s.strip_prefix("GF:")) {
            Some(p) => {
                let p: u64 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field characteristic in {s:?}")))?;
                Field::prime(p)
            }
            None => Err(Error::Parse(format!("unknown field {s:?}; expected Q or Fp:<prime>"))),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of a [`Field`].
///
/// Mixing elements of different fields in one operation is a logic error and
/// panics; public entry points validate fields before computing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Modular { value: u64, modulus: u64 },
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => q.inv().map(Scalar::Rational),
            Scalar::Modular { value: 0, .. } => None,
            Scalar::Modular { value, modulus } => {
                Some(Scalar::Modular { value: inv_mod(*value, *modulus), modulus: *modulus })
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.pow(e)),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: pow_mod(*value, e as u64, *modulus), modulus: *modulus }
            }
        }
    }

    /// Signed integer pow, allowing negative exponents for units.
    pub fn powi(&self, e: i64) -> Option<Scalar> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|i| i.pow((-e) as u32))
        }
    }

    /// Whether printing this value needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { value, modulus } => *value > *modulus / 2,
        }
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Integer value: the integer itself over Q, the symmetric representative over F_p.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) => q.to_i64(),
            Scalar::Modular { value, modulus } => Some(if *value > *modulus / 2 {
                *value as i64 - *modulus as i64
            } else {
                *value as i64
            }),
        }
    }

    fn same_field(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("mixed fields in scalar arithmetic: {} and {}", self.field(), other.field());
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { .. } => write!(f, "{}", self.to_i64().unwrap()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => {
                self.same_field(rhs);
                let s = a + b;
                Scalar::Modular { value: if s >= *p { s - p } else { s }, modulus: *p }
            }
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => {
                self.same_field(rhs);
                Scalar::Modular { value: if a >= b { a - b } else { a + p - b }, modulus: *p }
            }
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, .. }) => {
                self.same_field(rhs);
                Scalar::Modular { value: a * b % p, modulus: *p }
            }
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value: 0, modulus } => Scalar::Modular { value: 0, modulus: *modulus },
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: modulus - value, modulus: *modulus }
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
