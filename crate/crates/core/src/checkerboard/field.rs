//! Lattice propagation and the two kernel methods.
//!
//! Sites are integers; a P-move steps `x → x + 1` and a Q-move `x → x − 1`,
//! one site per time step. Step `t` at site `x` is the half-unit point
//! `(t/2, x/2)`.

use alloc::vec;
use alloc::vec::Vec;

use super::paths::derived_weight;
use super::{Amplitude, CheckerboardError, PropagatorPair, Spinor};
use crate::kinematics::Move;

/// Largest step count accepted by the path-sum method (`2^20` paths).
pub const PATHSUM_MAX_STEPS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckerboardField {
    epsilon: f64,
    radius: usize,
    sites: Vec<Spinor>,
    step_count: usize,
}

impl CheckerboardField {
    /// All amplitude at site 0, on a lattice spanning `-radius..=radius`.
    pub fn new(epsilon: f64, radius: usize, initial: Spinor) -> Result<Self, CheckerboardError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(CheckerboardError::InvalidEpsilon(epsilon));
        }
        let mut sites = vec![Spinor::ZERO; 2 * radius + 1];
        sites[radius] = initial;
        Ok(CheckerboardField {
            epsilon,
            radius,
            sites,
            step_count: 0,
        })
    }

    /// Sized so that `steps` steps never reach the edge.
    pub fn for_steps(epsilon: f64, steps: usize, initial: Spinor) -> Result<Self, CheckerboardError> {
        Self::new(epsilon, steps + 1, initial)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn step_count(&self) -> usize {
        self.step_count
    }

    /// Elapsed time `T·ε`.
    pub fn time(&self) -> f64 {
        self.step_count as f64 * self.epsilon
    }

    pub fn site(&self, x: i64) -> Spinor {
        let r = self.radius as i64;
        if x < -r || x > r {
            return Spinor::ZERO;
        }
        self.sites[(x + r) as usize]
    }

    /// `(x, spinor)` for every allocated site.
    pub fn sites(&self) -> impl Iterator<Item = (i64, Spinor)> + '_ {
        let r = self.radius as i64;
        self.sites.iter().enumerate().map(move |(i, s)| (i as i64 - r, *s))
    }

    pub fn total_probability(&self) -> f64 {
        self.sites.iter().map(Spinor::norm).sum()
    }

    /// One application of `P + Q`. Fails rather than wrap when an edge site
    /// carries amplitude.
    pub fn step(&mut self, pp: &PropagatorPair) -> Result<(), CheckerboardError> {
        let last = self.sites.len() - 1;
        if !self.sites[0].is_zero() || !self.sites[last].is_zero() {
            return Err(CheckerboardError::BoundaryReached { step: self.step_count });
        }
        let (diag, rev) = (pp.diagonal(), pp.reversal());
        let mut next = vec![Spinor::ZERO; self.sites.len()];
        for (i, cell) in next.iter_mut().enumerate() {
            let left = if i > 0 { self.sites[i - 1] } else { Spinor::ZERO };
            let right = if i < last { self.sites[i + 1] } else { Spinor::ZERO };
            *cell = Spinor::new(diag * left.p + rev * left.q, rev * right.p + diag * right.q);
        }
        self.sites = next;
        self.step_count += 1;
        Ok(())
    }

    pub fn advance(&mut self, pp: &PropagatorPair, steps: usize) -> Result<(), CheckerboardError> {
        for _ in 0..steps {
            self.step(pp)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMethod {
    PathSum,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEntry {
    pub x: i64,
    pub helicity: Move,
    pub amplitude: Amplitude,
}

/// Amplitudes after `steps` steps from site 0, for every reachable site
/// `x ∈ {-T, -T+2, …, T}` and both helicities, sorted by `(x, helicity)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub steps: usize,
    pub entries: Vec<KernelEntry>,
}

impl Kernel {
    fn zeroed(steps: usize) -> Self {
        let t = steps as i64;
        let entries = (0..=steps as i64)
            .flat_map(|k| {
                let x = 2 * k - t;
                [Move::P, Move::Q].map(|helicity| KernelEntry {
                    x,
                    helicity,
                    amplitude: Amplitude::ZERO,
                })
            })
            .collect();
        Kernel { steps, entries }
    }

    fn slot(&self, x: i64, helicity: Move) -> usize {
        let k = ((x + self.steps as i64) / 2) as usize;
        2 * k + usize::from(helicity == Move::Q)
    }

    /// Reads the sites reachable in `field.step_count()` steps from site 0.
    pub fn from_field(field: &CheckerboardField) -> Self {
        let mut out = Kernel::zeroed(field.step_count());
        for e in out.entries.iter_mut() {
            e.amplitude = field.site(e.x).component(e.helicity);
        }
        out
    }

    pub fn get(&self, x: i64, helicity: Move) -> Option<Amplitude> {
        let t = self.steps as i64;
        if x < -t || x > t || (x + t) % 2 != 0 {
            return None;
        }
        Some(self.entries[self.slot(x, helicity)].amplitude)
    }

    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|e| e.amplitude.born()).sum()
    }
}

pub fn kernel(
    steps: usize,
    pp: &PropagatorPair,
    initial_helicity: Move,
    method: KernelMethod,
) -> Result<Kernel, CheckerboardError> {
    match method {
        KernelMethod::PathSum => path_sum_kernel(steps, pp, initial_helicity),
        KernelMethod::Matrix => matrix_kernel(steps, pp, initial_helicity),
    }
}

fn path_sum_kernel(steps: usize, pp: &PropagatorPair, initial: Move) -> Result<Kernel, CheckerboardError> {
    if steps > PATHSUM_MAX_STEPS {
        return Err(CheckerboardError::CapExceeded {
            steps,
            max: PATHSUM_MAX_STEPS,
        });
    }
    let mut out = Kernel::zeroed(steps);
    if steps == 0 {
        let i = out.slot(0, initial);
        out.entries[i].amplitude = Amplitude::ONE;
        return Ok(out);
    }
    // Counting in binary with P = 0 visits sequences in lexicographic order.
    let mut moves = vec![Move::P; steps];
    for code in 0u64..(1u64 << steps) {
        let mut x = 0i64;
        for (j, mv) in moves.iter_mut().enumerate() {
            *mv = if code >> (steps - 1 - j) & 1 == 0 { Move::P } else { Move::Q };
            x += if *mv == Move::P { 1 } else { -1 };
        }
        let w = derived_weight(pp, initial, &moves);
        let i = out.slot(x, moves[steps - 1]);
        out.entries[i].amplitude += w;
    }
    Ok(out)
}

fn matrix_kernel(steps: usize, pp: &PropagatorPair, initial: Move) -> Result<Kernel, CheckerboardError> {
    let mut field = CheckerboardField::for_steps(1.0, steps, Spinor::basis(initial))?;
    field.advance(pp, steps)?;
    Ok(Kernel::from_field(&field))
}

/// Largest componentwise difference between two kernels over the same steps.
pub fn discrepancy(a: &Kernel, b: &Kernel) -> Option<f64> {
    if a.steps != b.steps {
        return None;
    }
    Some(
        a.entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| x.amplitude.max_diff(y.amplitude))
            .fold(0.0, f64::max),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
    use proptest::prelude::*;

    #[test]
    fn single_step_from_p() {
        let pp = PropagatorPair::zero_momentum();
        let mut f = CheckerboardField::for_steps(0.1, 1, Spinor::basis(Move::P)).unwrap();
        f.step(&pp).unwrap();
        assert!(f.site(1).p.max_diff(Amplitude::new(FRAC_1_SQRT_2, 0.0)) < 1e-15);
        assert!(f.site(-1).q.max_diff(Amplitude::new(0.0, FRAC_1_SQRT_2)) < 1e-15);
        assert!((f.site(1).norm() - 0.5).abs() < 1e-15);
        assert!((f.site(-1).norm() - 0.5).abs() < 1e-15);
        assert!(f.site(0).is_zero());
        assert!((f.time() - 0.1).abs() < 1e-15);

        let k = kernel(1, &pp, Move::P, KernelMethod::Matrix).unwrap();
        assert_eq!(k.get(1, Move::P), Some(f.site(1).p));
        assert_eq!(k.get(-1, Move::Q), Some(f.site(-1).q));
        assert_eq!(k, kernel(1, &pp, Move::P, KernelMethod::PathSum).unwrap());
    }

    #[test]
    fn non_reversing_translates() {
        let pp = PropagatorPair::new(1.0, 0.0).unwrap();
        let mut f = CheckerboardField::for_steps(1.0, 7, Spinor::basis(Move::P)).unwrap();
        f.advance(&pp, 7).unwrap();
        assert_eq!(f.site(7), Spinor::basis(Move::P));
        assert_eq!(f.total_probability(), 1.0);
    }

    #[test]
    fn boundary_is_a_hard_error() {
        let pp = PropagatorPair::zero_momentum();
        let mut f = CheckerboardField::new(1.0, 2, Spinor::basis(Move::P)).unwrap();
        f.advance(&pp, 2).unwrap();
        assert_eq!(f.step(&pp), Err(CheckerboardError::BoundaryReached { step: 2 }));
        assert!(CheckerboardField::new(0.0, 2, Spinor::ZERO).is_err());
    }

    #[test]
    fn two_step_kernel() {
        let pp = PropagatorPair::zero_momentum();
        let k = kernel(2, &pp, Move::P, KernelMethod::PathSum).unwrap();
        assert!(k.get(2, Move::P).unwrap().max_diff(Amplitude::new(0.5, 0.0)) < 1e-15);
        // x = 0 is reached by PQ (ends Q) and QP (ends P)
        assert!(k.get(0, Move::Q).unwrap().max_diff(Amplitude::new(0.0, 0.5)) < 1e-15);
        assert!(k.get(0, Move::P).unwrap().max_diff(Amplitude::new(-0.5, 0.0)) < 1e-15);
        assert!(k.get(-2, Move::Q).unwrap().max_diff(Amplitude::new(0.0, 0.5)) < 1e-15);
        assert_eq!(k.get(1, Move::P), None);
        assert!((k.total_probability() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ten_step_methods_agree() {
        for theta in [0.0, 0.3, FRAC_PI_2] {
            let pp = PropagatorPair::from_angle(theta).unwrap();
            for h in [Move::P, Move::Q] {
                let a = kernel(10, &pp, h, KernelMethod::PathSum).unwrap();
                let b = kernel(10, &pp, h, KernelMethod::Matrix).unwrap();
                assert!(discrepancy(&a, &b).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn path_sum_cap() {
        let pp = PropagatorPair::zero_momentum();
        assert_eq!(
            kernel(40, &pp, Move::P, KernelMethod::PathSum),
            Err(CheckerboardError::CapExceeded { steps: 40, max: PATHSUM_MAX_STEPS })
        );
        assert!(kernel(40, &pp, Move::P, KernelMethod::Matrix).is_ok());
        let zero = kernel(0, &pp, Move::Q, KernelMethod::PathSum).unwrap();
        assert_eq!(zero, kernel(0, &pp, Move::Q, KernelMethod::Matrix).unwrap());
    }

    proptest! {
        #[test]
        fn conservation(theta in 0.0f64..FRAC_PI_2, steps in 1usize..60, re in -1.0f64..1.0, im in -1.0f64..1.0) {
            let pp = PropagatorPair::from_angle(theta).unwrap();
            let p = Amplitude::new(re, im);
            let q = Amplitude::new(1.0 - re.abs(), 0.5);
            let n = (p.born() + q.born()).sqrt();
            let initial = Spinor::new(p.scale(1.0 / n), q.scale(1.0 / n));
            let mut f = CheckerboardField::for_steps(0.01, steps, initial).unwrap();
            for _ in 0..steps {
                f.step(&pp).unwrap();
                prop_assert!((f.total_probability() - 1.0).abs() < 1e-12);
            }
        }
    }
}
