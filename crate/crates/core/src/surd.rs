//! Exact quadratic surds `a + b·√d` with rational `a`, `b`, `d`.
//!
//! The pair transform between linearly related chains multiplies lengths by
//! `√(m/n)` and `√(n/m)`. Both factors are rational multiples of `√(mn)`, so
//! every quantity derived from one transform stays inside `Q(√(mn))` and the
//! invariants (interval scalar, rate product, `M² = E² − p²`) can be checked
//! with zero tolerance.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Rational;

/// The number `rational + coeff·√radicand`.
///
/// Invariant: `radicand > 0` and is not the square of a rational; when
/// `coeff == 0` the radicand is normalized to `1`.
#[derive(Clone)]
pub struct Surd {
    rational: Rational,
    coeff: Rational,
    radicand: Rational,
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

impl Surd {
    pub fn from_rational(r: Rational) -> Self {
        Surd {
            rational: r,
            coeff: Rational::zero(),
            radicand: Rational::one(),
        }
    }

    /// `√r`, kept rational when `r` is a perfect square. `None` for `r < 0`.
    pub fn sqrt(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        Some(match exact_sqrt(r) {
            Some(root) => Surd::from_rational(root),
            None => Surd {
                rational: Rational::zero(),
                coeff: Rational::one(),
                radicand: r.clone(),
            },
        })
    }

    /// Builds `rational + coeff·√radicand`, folding perfect squares.
    pub fn new(rational: Rational, coeff: Rational, radicand: Rational) -> Option<Self> {
        let root = Surd::sqrt(&radicand)?;
        Some(Surd::from_rational(rational) + root.scale(&coeff))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn irrational_coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeff.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Surd {
            rational: &self.rational * k,
            coeff: &self.coeff * k,
            radicand: self.radicand.clone(),
        }
        .normalized()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        let b = self.coeff.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * libm::sqrt(d)
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.coeff);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with b²d.
        let a2 = &self.rational * &self.rational;
        let b2d = &self.coeff * &self.coeff * &self.radicand;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Surd::from_rational(self.rational.recip()));
        }
        // 1/(a + b√d) = (a − b√d)/(a² − b²d); the denominator is nonzero
        // because √d is irrational.
        let norm = &self.rational * &self.rational - &self.coeff * &self.coeff * &self.radicand;
        Some(
            Surd {
                rational: &self.rational / &norm,
                coeff: -(&self.coeff / &norm),
                radicand: self.radicand.clone(),
            }
            .normalized(),
        )
    }

    /// `q` such that `√other = q·√self_radicand`, when it exists.
    fn align(&self, other: &Surd) -> Option<Rational> {
        if self.radicand == other.radicand {
            return Some(Rational::one());
        }
        exact_sqrt(&(&other.radicand / &self.radicand))
    }

    /// Addition that reports radicands which cannot be combined.
    pub fn checked_add(&self, other: &Surd) -> Option<Surd> {
        if other.is_rational() {
            return Some(Surd {
                rational: &self.rational + &other.rational,
                coeff: self.coeff.clone(),
                radicand: self.radicand.clone(),
            });
        }
        if self.is_rational() {
            return other.checked_add(self);
        }
        let q = self.align(other)?;
        Some(
            Surd {
                rational: &self.rational + &other.rational,
                coeff: &self.coeff + &other.coeff * q,
                radicand: self.radicand.clone(),
            }
            .normalized(),
        )
    }

    /// Multiplication that reports products leaving a single quadratic field.
    pub fn checked_mul(&self, other: &Surd) -> Option<Surd> {
        if other.is_rational() {
            return Some(self.scale(&other.rational));
        }
        if self.is_rational() {
            return Some(other.scale(&self.rational));
        }
        match self.align(other) {
            Some(q) => {
                let (a, b, d) = (&self.rational, &self.coeff, &self.radicand);
                let c = &other.rational;
                let e = &other.coeff * q;
                Some(
                    Surd {
                        rational: a * c + b * &e * d,
                        coeff: a * &e + b * c,
                        radicand: d.clone(),
                    }
                    .normalized(),
                )
            }
            None if self.rational.is_zero() && other.rational.is_zero() => {
                let root = Surd::sqrt(&(&self.radicand * &other.radicand))?;
                Some(root.scale(&(&self.coeff * &other.coeff)))
            }
            None => None,
        }
    }

    fn normalized(mut self) -> Self {
        if self.coeff.is_zero() {
            self.radicand = Rational::one();
        }
        self
    }
}

fn sign_of(r: &Rational) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl From<Rational> for Surd {
    fn from(r: Rational) -> Self {
        Surd::from_rational(r)
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        match (-other.clone()).checked_add(self) {
            Some(diff) => diff.is_zero(),
            // 1, √d and √d' are linearly independent over Q here.
            None => false,
        }
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.clone().checked_add(&-other.clone()).map(|d| d.sign())
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            rational: -self.rational,
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

/// Panics if both operands carry incompatible radicands.
impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        self.checked_add(&rhs)
            .expect("adding surds over incompatible radicands")
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

/// Panics if the product leaves a single quadratic field.
impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        self.checked_mul(&rhs)
            .expect("multiplying surds over incompatible radicands")
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        let inv = rhs.recip().expect("division by zero surd");
        self * inv
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let magnitude = self.coeff.abs();
        if !self.rational.is_zero() {
            let op = if self.coeff.is_negative() { "-" } else { "+" };
            write!(f, "{} {op} ", self.rational)?;
        } else if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        if magnitude.is_one() {
            write!(f, "√({})", self.radicand)
        } else {
            write!(f, "({magnitude})·√({})", self.radicand)
        }
    }
}
