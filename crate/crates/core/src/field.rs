//! Coefficient fields.
//!
//! Everything in this crate is exact. The two coefficient fields are the
//! rationals ([`Rational`]) and rational function fields over them
//! ([`crate::ratfunc::RatFunc`]).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// An exact commutative field.
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
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_rational(q: &Rational) -> Self;
    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    /// `self - a * b`
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.clone() - a.mul_ref(b)
    }
    fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
    /// True when the value prints as a bare rational literal (no parentheses
    /// needed inside a product).
    fn is_rational_literal(&self) -> bool;
    fn parse(s: &str) -> Result<Self, String>;
}

impl Field for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self - a * b
    }
    fn is_rational_literal(&self) -> bool {
        true
    }
    fn parse(s: &str) -> Result<Self, String> {
        parse_rational(s)
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad rational `{s}`"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad rational `{s}`"))?;
    if Zero::is_zero(&d) {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Scales a rational vector by the lcm of its denominators, giving an
/// integer vector on the same ray.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = num_integer::Integer::lcm(&l, x.denom());
    }
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

