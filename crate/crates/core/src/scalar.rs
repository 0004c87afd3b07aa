//! Exact scalar fields: the rationals and prime fields GF(p).
//!
//! Everything above this module is generic over [`Scalar`]. Prime fields are
//! const-generic ([`Fp<P>`]); runtime field descriptors are turned into a
//! concrete scalar type with [`FieldDesc::dispatch`].

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDesc {
    Rationals,
    PrimeField(u64),
}

impl FieldDesc {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldDesc::PrimeField(p))
        } else {
            Err(Error::Parse(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Rationals => 0,
            FieldDesc::PrimeField(p) => *p,
        }
    }

    /// Field order, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDesc::Rationals => None,
            FieldDesc::PrimeField(p) => Some(*p),
        }
    }

    /// Run `visitor` with the scalar type of this field.
    ///
    /// Prime fields are monomorphized for every prime below 16; larger primes
    /// are rejected.
    pub fn dispatch<V: FieldVisitor>(&self, visitor: V) -> Result<V::Output> {
        match self {
            FieldDesc::Rationals => Ok(visitor.visit::<BigRational>()),
            FieldDesc::PrimeField(2) => Ok(visitor.visit::<Fp<2>>()),
            FieldDesc::PrimeField(3) => Ok(visitor.visit::<Fp<3>>()),
            FieldDesc::PrimeField(5) => Ok(visitor.visit::<Fp<5>>()),
            FieldDesc::PrimeField(7) => Ok(visitor.visit::<Fp<7>>()),
            FieldDesc::PrimeField(11) => Ok(visitor.visit::<Fp<11>>()),
            FieldDesc::PrimeField(13) => Ok(visitor.visit::<Fp<13>>()),
            other => Err(Error::UnsupportedField(*other)),
        }
    }
}

impl Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "Q"),
            FieldDesc::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Name(String),
    Prime { p: u64 },
}

impl Serialize for FieldDesc {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match self {
            FieldDesc::Rationals => FieldRepr::Name("Q".into()),
            FieldDesc::PrimeField(p) => FieldRepr::Prime { p: *p },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match FieldRepr::deserialize(d)? {
            FieldRepr::Name(n) if n == "Q" => Ok(FieldDesc::Rationals),
            FieldRepr::Name(n) => {
                Err(D::Error::custom(format!("unknown field {n:?}, expected \"Q\" or {{\"p\": prime}}")))
            }
            FieldRepr::Prime { p } => FieldDesc::prime(p).map_err(D::Error::custom),
        }
    }
}

/// Callback for [`FieldDesc::dispatch`].
pub trait FieldVisitor {
    type Output;
    fn visit<S: Scalar>(self) -> Self::Output;
}

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn field() -> FieldDesc;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// All field elements in canonical order, or `None` for infinite fields.
    fn elements() -> Option<Vec<Self>>;

    /// A random element. Rationals are drawn with small numerators and
    /// denominators so that exact arithmetic stays cheap.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    fn field() -> FieldDesc {
        FieldDesc::Rationals
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let numer: i64 = rng.random_range(-3..=3);
        let denom: i64 = if rng.random_bool(0.75) { 1 } else { rng.random_range(2..=3) };
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(Self::from_i64)
                .ok_or_else(|| Error::Parse(format!("rational literal {n} is not an integer, use a \"p/q\" string"))),
            other => Err(Error::Parse(format!("expected a rational, found {other}"))),
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    let mut r = BigRational::new(numer, denom);
    if r.denom().is_negative() {
        r = BigRational::new(-r.numer().clone(), -r.denom().clone());
    }
    Ok(r)
}

pub const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::PRIME;
        Fp(v % P)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> FieldDesc {
        FieldDesc::PrimeField(P)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u64)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp::new).collect())
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.random_range(0..P))
    }

    fn to_json(&self) -> Value {
        Value::String(self.0.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let raw = match v {
            Value::Number(n) => n.as_u64(),
            Value::String(s) => s.trim().parse::<u64>().ok(),
            _ => None,
        };
        match raw {
            Some(x) if x < P => Ok(Fp::new(x)),
            _ => Err(Error::Parse(format!("expected an integer in [0, {P}), found {v}"))),
        }
    }
}

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
