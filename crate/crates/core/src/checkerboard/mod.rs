//! Amplitude calculus for influence sequences.
//!
//! Orderings of P- and Q-moves that observers cannot tell apart are combined
//! with pair-valued amplitudes: series composition multiplies, parallel
//! composition adds, and probabilities follow from the Born rule. The
//! per-step amplitudes form a pair of 2×2 propagators acting on a spinor
//! indexed by the direction of the last move. Summing paths and stepping a
//! lattice field with those propagators must give the same kernel.

mod algebra;
mod amplitude;
mod field;
mod paths;
mod propagator;

pub use algebra::{parallel_join, series_join, MeasurementSequence};
pub use amplitude::{amp_add, amp_mul, born, Amplitude, Spinor};
pub use field::{discrepancy, kernel, CheckerboardField, Kernel, KernelEntry, KernelMethod, PATHSUM_MAX_STEPS};
pub use paths::{path_weight, reversal_count, sequence_amplitude, unordered_amplitude, PathWeight, Weighting};
pub use propagator::{
    complete_moduli, constraint, make_propagators, verify_propagator_constraints, ConstraintCheck, ConstraintReport,
    Matrix2, PropagatorPair, CONSTRAINT_TOL,
};

use crate::kinematics::KinematicsError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckerboardError {
    #[error("propagator moduli a = {a}, b = {b} must be nonnegative with a^2 + b^2 = 1")]
    NotNormalized { a: f64, b: f64 },
    #[error("angle {0} is outside [0, pi/2]")]
    AngleOutOfRange(f64),
    #[error("last element of the first sequence differs from the first element of the second")]
    EndpointMismatch,
    #[error("sequences must be identical except for one disjoint slot")]
    IncompatibleShapes,
    #[error("initial helicity is required")]
    MissingHelicity,
    #[error("wavefront reached the lattice boundary after {step} steps")]
    BoundaryReached { step: usize },
    #[error("path sum over {steps} steps exceeds the cap of {max}; use the matrix method")]
    CapExceeded { steps: usize, max: usize },
    #[error("time step must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
}
