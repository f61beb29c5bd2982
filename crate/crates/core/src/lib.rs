//! Influence-based free particle model.
//!
//! A causal poset is built from particle chains joined by pairwise influence
//! edges. Embedded observer chains quantify the poset: projections give
//! interval pairs, coordinated chain pairs give a 1+1 dimensional spacetime
//! picture, and linearly related chains give the pair transform (a Lorentz
//! boost analog). A free particle that only influences two coordinated
//! observers is described by a string of P- and Q-moves, which yields the
//! rate-based mass, energy and momentum relations and, once the orderings are
//! quantified by amplitudes, the checkerboard propagator.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the companion `influence` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod causet;
pub mod checkerboard;
pub mod kinematics;
pub mod quantify;
pub mod scalar;
pub mod surd;

pub use causet::{CausalPoset, ChainId, EventId, PosetError, ValidationReport, Violation};
pub use checkerboard::{Amplitude, PropagatorPair, Spinor};
pub use kinematics::{InfluenceSequence, Move, UnorderedInfluenceCount};
pub use quantify::{IntervalPair, LinearRelation, SpacetimeInterval};
pub use scalar::{Rational, Scalar};
pub use surd::Surd;
