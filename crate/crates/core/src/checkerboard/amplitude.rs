use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

/// A real pair `(a₁, a₂)` combined pairwise-additively under parallel
/// composition and by complex multiplication under series composition.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Amplitude {
    pub re: f64,
    pub im: f64,
}

impl Amplitude {
    pub const ZERO: Amplitude = Amplitude { re: 0.0, im: 0.0 };
    pub const ONE: Amplitude = Amplitude { re: 1.0, im: 0.0 };
    pub const I: Amplitude = Amplitude { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Amplitude { re, im }
    }

    pub fn from_polar(modulus: f64, phase: f64) -> Self {
        let (s, c) = libm::sincos(phase);
        Amplitude::new(modulus * c, modulus * s)
    }

    pub fn conj(self) -> Self {
        Amplitude::new(self.re, -self.im)
    }

    /// Born rule probability `a₁² + a₂²`.
    pub fn born(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, k: f64) -> Self {
        Amplitude::new(self.re * k, self.im * k)
    }

    pub fn powi(self, n: usize) -> Self {
        (0..n).fold(Amplitude::ONE, |acc, _| acc * self)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    /// Largest componentwise difference.
    pub fn max_diff(self, other: Amplitude) -> f64 {
        (self.re - other.re).abs().max((self.im - other.im).abs())
    }
}

pub fn amp_add(a: Amplitude, b: Amplitude) -> Amplitude {
    a + b
}

pub fn amp_mul(a: Amplitude, b: Amplitude) -> Amplitude {
    a * b
}

pub fn born(a: Amplitude) -> f64 {
    a.born()
}

impl Add for Amplitude {
    type Output = Amplitude;
    fn add(self, rhs: Amplitude) -> Amplitude {
        Amplitude::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Amplitude {
    fn add_assign(&mut self, rhs: Amplitude) {
        *self = *self + rhs;
    }
}

impl Sub for Amplitude {
    type Output = Amplitude;
    fn sub(self, rhs: Amplitude) -> Amplitude {
        Amplitude::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        Amplitude::new(-self.re, -self.im)
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Amplitude) -> Amplitude {
        Amplitude::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl MulAssign for Amplitude {
    fn mul_assign(&mut self, rhs: Amplitude) {
        *self = *self * rhs;
    }
}

impl core::iter::Sum for Amplitude {
    fn sum<I: Iterator<Item = Amplitude>>(iter: I) -> Amplitude {
        iter.fold(Amplitude::ZERO, Add::add)
    }
}

/// Two-component amplitude indexed by helicity: `p` for "last move was P",
/// `q` for "last move was Q".
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor {
    pub p: Amplitude,
    pub q: Amplitude,
}

impl Spinor {
    pub const ZERO: Spinor = Spinor {
        p: Amplitude::ZERO,
        q: Amplitude::ZERO,
    };

    pub const fn new(p: Amplitude, q: Amplitude) -> Self {
        Spinor { p, q }
    }

    /// Unit amplitude on one helicity component.
    pub fn basis(helicity: crate::kinematics::Move) -> Self {
        match helicity {
            crate::kinematics::Move::P => Spinor::new(Amplitude::ONE, Amplitude::ZERO),
            crate::kinematics::Move::Q => Spinor::new(Amplitude::ZERO, Amplitude::ONE),
        }
    }

    pub fn component(&self, helicity: crate::kinematics::Move) -> Amplitude {
        match helicity {
            crate::kinematics::Move::P => self.p,
            crate::kinematics::Move::Q => self.q,
        }
    }

    pub fn norm(&self) -> f64 {
        self.p.born() + self.q.born()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn max_diff(&self, other: &Spinor) -> f64 {
        self.p.max_diff(other.p).max(self.q.max_diff(other.q))
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl AddAssign for Spinor {
    fn add_assign(&mut self, rhs: Spinor) {
        *self = *self + rhs;
    }
}
