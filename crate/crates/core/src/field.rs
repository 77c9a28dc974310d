//! Exact scalar fields.
//!
//! Two fields are provided: [`Fp`], the integers modulo an odd prime (the
//! default is the Mersenne prime 2^61 - 1), and [`Rational`], arbitrary
//! precision rationals. Every computation in the crate is generic over
//! [`Field`], so no rounding ever enters a rank decision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::Value;

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Upper bound of the integers drawn by [`Rational::random`].
pub const RATIONAL_SAMPLE_MAX: u64 = 1 << 20;

/// Which concrete field a computation ran in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Prime,
    Rational,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime => f.write_str("prime"),
            FieldKind::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prime" => Ok(FieldKind::Prime),
            "rational" => Ok(FieldKind::Rational),
            other => Err(format!("unknown field `{other}` (expected prime or rational)")),
        }
    }
}

/// An exact field with characteristic different from 2.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Embeds the rational `num / den`. Fails when `den` is zero in this field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// A random element for genericity sampling: uniform over the field for
    /// `Fp`, a uniform integer in `[1, 2^20]` for `Rational`.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Exact JSON form: integers where possible, `"num/den"` strings otherwise.
    fn to_json(&self) -> Value;

    /// Modulus of the field, `None` in characteristic zero.
    fn modulus() -> Option<u64>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.clone() * inv)
    }

    fn half() -> Self {
        Self::from_i64(2)
            .inv()
            .expect("fields used here have characteristic other than 2")
    }
}

/// Integers modulo the odd prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

/// The default field.
pub type F61 = Fp<MERSENNE_61>;

impl<const P: u64> Fp<P> {
    const ODD_MODULUS: () = assert!(P > 2 && P % 2 == 1 && P < (1 << 63), "modulus must be an odd prime below 2^63");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::ODD_MODULUS;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Self::new(r.to_u64().expect("residue fits in u64"))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
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
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Field for Fp<P> {
    const KIND: FieldKind = FieldKind::Prime;

    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Self::new(1)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn from_i64(v: i64) -> Self {
        // P < 2^63, so the cast is lossless
        Self::new(v.rem_euclid(P as i64) as u64)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        Self::from_bigint(num).div(&d)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.random_range(0..P))
    }

    fn to_json(&self) -> Value {
        Value::from(self.0)
    }

    fn modulus() -> Option<u64> {
        Some(P)
    }
}

/// Arbitrary precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Rational(-self.0)
    }
}

impl Field for Rational {
    const KIND: FieldKind = FieldKind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.random_range(1..=RATIONAL_SAMPLE_MAX) as i64)
    }

    fn to_json(&self) -> Value {
        match self.0.is_integer().then(|| self.0.numer().to_i64()).flatten() {
            Some(v) => Value::from(v),
            None => Value::String(self.to_string()),
        }
    }

    fn modulus() -> Option<u64> {
        None
    }
}

/// Parses an exact rational written as an integer, `"a/b"`, or a JSON number
/// without fractional part.
pub fn parse_exact(value: &Value) -> Option<(BigInt, BigInt)> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some((BigInt::from(i), BigInt::one()))
            } else {
                n.as_u64().map(|u| (BigInt::from(u), BigInt::one()))
            }
        }
        Value::String(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
                None => (s.parse::<BigInt>().ok()?, BigInt::one()),
            };
            if den.is_zero() {
                return None;
            }
            if den.is_negative() {
                Some((-num, -den))
            } else {
                Some((num, den))
            }
        }
        _ => None,
    }
}
