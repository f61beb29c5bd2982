//! P- and Q-move propagators.
//!
//! With `x = [PP]`, `y = [QP]`, `w = [PQ]`, `z = [QQ]` the move matrices are
//!
//! ```text
//! P = | x  y |      Q = | 0  0 |
//!     | 0  0 |          | w  z |
//! ```
//!
//! Requiring the two outcomes of one step to carry total probability one for
//! every normalized spinor gives `Q†Q + P†P = I`. The solutions are
//! `x = z = a·e^{iα}`, `y = w = b·e^{iβ}` with `a² + b² = 1` and phases
//! differing by a quarter turn.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::ops::{Add, Mul};

use super::{Amplitude, CheckerboardError, Spinor};
use crate::kinematics::Move;

/// Tolerance used for every propagator constraint.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// 2×2 matrix of amplitudes, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Amplitude; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[Amplitude::ONE, Amplitude::ZERO], [Amplitude::ZERO, Amplitude::ONE]]);

    pub fn adjoint(&self) -> Matrix2 {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        let m = &self.0;
        Spinor::new(m[0][0] * s.p + m[0][1] * s.q, m[1][0] * s.p + m[1][1] * s.q)
    }

    pub fn max_diff(&self, other: &Matrix2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max(self.0[r][c].max_diff(other.0[r][c]));
            }
        }
        worst
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] += rhs.0[r][c];
            }
        }
        out
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Amplitude::ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Matrix2(out)
    }
}

/// Propagator pair parameterized by moduli `a, b` and phases `α, β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorPair {
    a: f64,
    b: f64,
    phase_alpha: f64,
    phase_beta: f64,
}

impl PropagatorPair {
    /// Canonical gauge `α = 0`, `β = π/2`.
    pub fn new(a: f64, b: f64) -> Result<Self, CheckerboardError> {
        make_propagators(a, b, 0.0, FRAC_PI_2)
    }

    /// `a = b = 1/√2`: equal rates of influence on both chains.
    pub fn zero_momentum() -> Self {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        PropagatorPair {
            a: h,
            b: h,
            phase_alpha: 0.0,
            phase_beta: FRAC_PI_2,
        }
    }

    /// `a = cos θ`, `b = sin θ` for `θ ∈ [0, π/2]`.
    pub fn from_angle(theta: f64) -> Result<Self, CheckerboardError> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(CheckerboardError::AngleOutOfRange(theta));
        }
        let (s, c) = libm::sincos(theta);
        Self::new(c, s)
    }

    /// `a = cos(Mε)`, `b = sin(Mε)`. The reversal amplitude `i·sin(Mε)`
    /// agrees with the weight `i·M·ε` per reversal to third order in `Mε`.
    pub fn from_mass(mass: f64, epsilon: f64) -> Result<Self, CheckerboardError> {
        Self::from_angle(mass * epsilon)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn phase_alpha(&self) -> f64 {
        self.phase_alpha
    }

    pub fn phase_beta(&self) -> f64 {
        self.phase_beta
    }

    pub fn is_canonical_gauge(&self) -> bool {
        self.phase_alpha == 0.0 && self.phase_beta == FRAC_PI_2
    }

    /// Amplitude for moving `next` given that the previous move was `prev`.
    pub fn entry(&self, prev: Move, next: Move) -> Amplitude {
        if prev == next {
            self.diagonal()
        } else {
            self.reversal()
        }
    }

    /// `x = z = a·e^{iα}`.
    pub fn diagonal(&self) -> Amplitude {
        if self.phase_alpha == 0.0 {
            Amplitude::new(self.a, 0.0)
        } else {
            Amplitude::from_polar(self.a, self.phase_alpha)
        }
    }

    /// `y = w = b·e^{iβ}`.
    pub fn reversal(&self) -> Amplitude {
        if self.phase_beta == FRAC_PI_2 {
            Amplitude::new(0.0, self.b)
        } else {
            Amplitude::from_polar(self.b, self.phase_beta)
        }
    }

    pub fn p_matrix(&self) -> Matrix2 {
        Matrix2([
            [self.entry(Move::P, Move::P), self.entry(Move::Q, Move::P)],
            [Amplitude::ZERO, Amplitude::ZERO],
        ])
    }

    pub fn q_matrix(&self) -> Matrix2 {
        Matrix2([
            [Amplitude::ZERO, Amplitude::ZERO],
            [self.entry(Move::P, Move::Q), self.entry(Move::Q, Move::Q)],
        ])
    }

    pub fn matrix(&self, mv: Move) -> Matrix2 {
        match mv {
            Move::P => self.p_matrix(),
            Move::Q => self.q_matrix(),
        }
    }
}

/// Builds a propagator pair after checking `a, b ≥ 0` and `a² + b² = 1`, both
/// to [`CONSTRAINT_TOL`]. Moduli within tolerance below zero are set to zero.
pub fn make_propagators(a: f64, b: f64, phase_alpha: f64, phase_beta: f64) -> Result<PropagatorPair, CheckerboardError> {
    if !(a >= -CONSTRAINT_TOL && b >= -CONSTRAINT_TOL) || (a * a + b * b - 1.0).abs() > CONSTRAINT_TOL {
        return Err(CheckerboardError::NotNormalized { a, b });
    }
    Ok(PropagatorPair {
        a: a.max(0.0),
        b: b.max(0.0),
        phase_alpha,
        phase_beta,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub checks: Vec<ConstraintCheck>,
    /// False when phases other than `α = 0`, `β = π/2` were used.
    pub canonical_gauge: bool,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub mod constraint {
    pub const COMPLETENESS: &str = "QdagQ+PdagP=I";
    pub const NORM_FIRST: &str = "w*w+x*x=1";
    pub const NORM_SECOND: &str = "z*z+y*y=1";
    pub const OFF_DIAGONAL: &str = "w*z=-x*y";
    pub const OFF_DIAGONAL_CONJ: &str = "z*w=-y*x";
    pub const UNITARY: &str = "P+Q unitary";
}

/// Evaluates every propagator constraint to [`CONSTRAINT_TOL`].
pub fn verify_propagator_constraints(pp: &PropagatorPair) -> ConstraintReport {
    let (p, q) = (pp.p_matrix(), pp.q_matrix());
    let x = p.0[0][0];
    let y = p.0[0][1];
    let w = q.0[1][0];
    let z = q.0[1][1];
    let u = p + q;

    let completeness = (q.adjoint() * q + p.adjoint() * p).max_diff(&Matrix2::IDENTITY);
    let norm_first = (w.conj() * w + x.conj() * x).max_diff(Amplitude::ONE);
    let norm_second = (z.conj() * z + y.conj() * y).max_diff(Amplitude::ONE);
    let off = (w.conj() * z).max_diff(-(x.conj() * y));
    let off_conj = (z.conj() * w).max_diff(-(y.conj() * x));
    let unitary = (u.adjoint() * u)
        .max_diff(&Matrix2::IDENTITY)
        .max((u * u.adjoint()).max_diff(&Matrix2::IDENTITY));

    let checks = [
        (constraint::COMPLETENESS, completeness),
        (constraint::NORM_FIRST, norm_first),
        (constraint::NORM_SECOND, norm_second),
        (constraint::OFF_DIAGONAL, off),
        (constraint::OFF_DIAGONAL_CONJ, off_conj),
        (constraint::UNITARY, unitary),
    ]
    .into_iter()
    .map(|(name, deviation)| ConstraintCheck {
        name,
        deviation,
        passed: deviation <= CONSTRAINT_TOL,
    })
    .collect();

    ConstraintReport {
        checks,
        canonical_gauge: pp.is_canonical_gauge(),
    }
}

/// Given moduli `a, b` of `x, w` with `a² + b² = 1`, the moduli `(c, d)` of
/// `y, z` solving `c² + d² = 1`, `ac = bd`. Both solutions are returned.
pub fn complete_moduli(a: f64, b: f64) -> [(f64, f64); 2] {
    // ac = bd forces (c, d) = t·(b, a); normalization gives t = ±1.
    [(b, a), (-b, -a)]
}
