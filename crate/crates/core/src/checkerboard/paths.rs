//! Amplitudes of individual influence sequences and of unordered counts.

use super::{Amplitude, CheckerboardError, PropagatorPair, Spinor};
use crate::kinematics::{check_cap, orderings, InfluenceSequence, Move, UnorderedInfluenceCount, ENUMERATION_CAP};

/// Number of direction changes, counting a change from the initial helicity
/// to the first move.
pub fn reversal_count(seq: &InfluenceSequence) -> Result<usize, CheckerboardError> {
    let initial = seq.initial_helicity.ok_or(CheckerboardError::MissingHelicity)?;
    Ok(count_reversals(initial, &seq.moves))
}

pub(crate) fn count_reversals(initial: Move, moves: &[Move]) -> usize {
    let mut prev = initial;
    let mut count = 0;
    for &m in moves {
        if m != prev {
            count += 1;
        }
        prev = m;
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weighting {
    /// `(i·M·ε)^R`.
    Feynman { mass: f64, epsilon: f64 },
    /// Product of the propagator entries along the path.
    Derived(PropagatorPair),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathWeight {
    pub reversals: usize,
    pub weight: Amplitude,
}

pub fn path_weight(seq: &InfluenceSequence, weighting: &Weighting) -> Result<PathWeight, CheckerboardError> {
    let initial = seq.initial_helicity.ok_or(CheckerboardError::MissingHelicity)?;
    let reversals = count_reversals(initial, &seq.moves);
    let weight = match weighting {
        Weighting::Feynman { mass, epsilon } => Amplitude::new(0.0, mass * epsilon).powi(reversals),
        Weighting::Derived(pp) => derived_weight(pp, initial, &seq.moves),
    };
    Ok(PathWeight { reversals, weight })
}

pub(crate) fn derived_weight(pp: &PropagatorPair, initial: Move, moves: &[Move]) -> Amplitude {
    let mut prev = initial;
    let mut weight = Amplitude::ONE;
    for &m in moves {
        weight *= pp.entry(prev, m);
        prev = m;
    }
    weight
}

/// Applies the move matrices in sequence order, so `"PQ"` acts as `Q·P`.
pub fn sequence_amplitude(seq: &InfluenceSequence, pp: &PropagatorPair, initial: Spinor) -> Spinor {
    apply_moves(pp, &seq.moves, initial)
}

fn apply_moves(pp: &PropagatorPair, moves: &[Move], initial: Spinor) -> Spinor {
    let (p, q) = (pp.p_matrix(), pp.q_matrix());
    moves.iter().fold(initial, |s, &m| match m {
        Move::P => p.apply(&s),
        Move::Q => q.apply(&s),
    })
}

/// Sum of [`sequence_amplitude`] over every ordering of `counts`, in
/// lexicographic order.
pub fn unordered_amplitude(
    counts: UnorderedInfluenceCount,
    pp: &PropagatorPair,
    initial: Spinor,
) -> Result<Spinor, CheckerboardError> {
    check_cap(counts, ENUMERATION_CAP)?;
    let mut total = Spinor::ZERO;
    for moves in orderings(counts) {
        total += apply_moves(pp, &moves, initial);
    }
    Ok(total)
}
