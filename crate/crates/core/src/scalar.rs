//! Number types shared by the quantification and kinematics code.

use core::cmp::Ordering;
use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::surd::Surd;

/// Exact rational number used for valuations, lengths and rates.
pub type Rational = BigRational;

/// Ordered field operations needed by the interval algebra.
///
/// Implemented for [`Rational`] and [`Surd`] (exact) and for `f64`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Sign relative to zero.
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;

    fn half(&self) -> Self {
        self.clone() / (Self::one() + Self::one())
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Surd {
    fn zero() -> Self {
        Surd::from_rational(Zero::zero())
    }
    fn one() -> Self {
        Surd::from_rational(One::one())
    }
    fn from_rational(r: &Rational) -> Self {
        Surd::from_rational(r.clone())
    }
    fn sign(&self) -> Ordering {
        Surd::sign(self)
    }
    fn to_f64(&self) -> f64 {
        Surd::to_f64(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }
    fn sign(&self) -> Ordering {
        self.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn half(&self) -> Self {
        self * 0.5
    }
}

/// Shorthand for building a rational from an integer ratio.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseRationalError(pub alloc::string::String);

/// Parses `"3"`, `"-2.5"`, `"7/3"` or `"1.25e-2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.into());
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let mut all = alloc::string::String::with_capacity(whole.len() + frac.len());
    all.push_str(whole);
    all.push_str(frac);
    let numer: BigInt = all.parse().map_err(|_| err())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    let factor = Rational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Absolute value helper that works for every [`Scalar`].
pub fn abs<T: Scalar>(x: &T) -> T {
    if x.sign() == Ordering::Less {
        -x.clone()
    } else {
        x.clone()
    }
}
