//! Free particle influence sequences and rate-based kinematics.
//!
//! A free particle influences two coordinated observer chains P and Q. Each
//! act of influence is a P-move or a Q-move. Observers only learn how many of
//! each occurred, so every ordering of those counts is a candidate history;
//! in the spacetime picture each ordering is a zig-zag path at `|β| = 1` on a
//! half-unit lattice. Rates of influence give the mass, energy and momentum
//! analogs.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quantify::{LinearRelation, QuantifyError};
use crate::scalar::{int, ratio, Rational};
use crate::surd::Surd;

/// Default cap on the number of enumerated orderings.
pub const ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KinematicsError {
    #[error("{count} orderings exceed the enumeration cap of {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid move symbol {0:?}; expected P or Q")]
    InvalidMove(char),
    #[error(transparent)]
    Relation(#[from] QuantifyError),
}

/// Direction of one act of influence. `P < Q` in the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    P,
    Q,
}

impl Move {
    pub fn symbol(self) -> char {
        match self {
            Move::P => 'P',
            Move::Q => 'Q',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self, KinematicsError> {
        match c {
            'P' | 'p' => Ok(Move::P),
            'Q' | 'q' => Ok(Move::Q),
            other => Err(KinematicsError::InvalidMove(other)),
        }
    }

    /// Segment speed: +1 for a P-move (away from P), −1 for a Q-move.
    pub fn beta(self) -> i8 {
        match self {
            Move::P => 1,
            Move::Q => -1,
        }
    }

    pub fn flipped(self) -> Move {
        match self {
            Move::P => Move::Q,
            Move::Q => Move::P,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An ordered string of moves, optionally with the direction of the move
/// that preceded it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct InfluenceSequence {
    pub moves: Vec<Move>,
    pub initial_helicity: Option<Move>,
}

impl InfluenceSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        InfluenceSequence {
            moves,
            initial_helicity: None,
        }
    }

    pub fn with_helicity(mut self, helicity: Move) -> Self {
        self.initial_helicity = Some(helicity);
        self
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn counts(&self) -> UnorderedInfluenceCount {
        let p = self.moves.iter().filter(|&&m| m == Move::P).count() as u64;
        UnorderedInfluenceCount::new(p, self.moves.len() as u64 - p)
    }
}

impl FromStr for InfluenceSequence {
    type Err = KinematicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().chars().map(Move::from_symbol).collect::<Result<_, _>>().map(InfluenceSequence::new)
    }
}

impl fmt::Display for InfluenceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.moves.iter().try_for_each(|m| write!(f, "{m}"))
    }
}

/// Recorded numbers of P- and Q-moves, with no ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct UnorderedInfluenceCount {
    pub p: u64,
    pub q: u64,
}

impl UnorderedInfluenceCount {
    pub fn new(p: u64, q: u64) -> Self {
        UnorderedInfluenceCount { p, q }
    }

    pub fn total(&self) -> u64 {
        self.p + self.q
    }
}

/// `binomial(P + Q, P)` in arbitrary precision.
pub fn count_orderings(counts: UnorderedInfluenceCount) -> BigUint {
    let n = counts.total();
    let k = counts.p.min(counts.q);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc·(n − i)/(i + 1) stays integral at every step
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Rearranges `moves` into the next ordering in lexicographic order.
/// Returns `false` (leaving the slice sorted) after the last ordering.
pub fn next_ordering(moves: &mut [Move]) -> bool {
    let n = moves.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && moves[i - 1] >= moves[i] {
        i -= 1;
    }
    if i == 0 {
        moves.reverse();
        return false;
    }
    let mut j = n - 1;
    while moves[j] <= moves[i - 1] {
        j -= 1;
    }
    moves.swap(i - 1, j);
    moves[i..].reverse();
    true
}

/// Lazily yields every ordering of `counts` in lexicographic order.
pub struct Orderings {
    current: Option<Vec<Move>>,
}

impl Iterator for Orderings {
    type Item = Vec<Move>;

    fn next(&mut self) -> Option<Vec<Move>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if next_ordering(&mut succ) {
            self.current = Some(succ);
        }
        Some(out)
    }
}

pub fn orderings(counts: UnorderedInfluenceCount) -> Orderings {
    let mut first = Vec::with_capacity(counts.total() as usize);
    first.extend(core::iter::repeat_n(Move::P, counts.p as usize));
    first.extend(core::iter::repeat_n(Move::Q, counts.q as usize));
    Orderings { current: Some(first) }
}

/// Checks `binomial(P + Q, P) <= cap`.
pub fn check_cap(counts: UnorderedInfluenceCount, cap: u64) -> Result<u64, KinematicsError> {
    let count = count_orderings(counts);
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(KinematicsError::CapExceeded { count, cap }),
    }
}

/// All orderings, lexicographic with `P < Q`, at most [`ENUMERATION_CAP`].
pub fn enumerate_orderings(counts: UnorderedInfluenceCount) -> Result<Vec<InfluenceSequence>, KinematicsError> {
    enumerate_orderings_capped(counts, ENUMERATION_CAP)
}

pub fn enumerate_orderings_capped(
    counts: UnorderedInfluenceCount,
    cap: u64,
) -> Result<Vec<InfluenceSequence>, KinematicsError> {
    let n = check_cap(counts, cap)?;
    let mut out = Vec::with_capacity(n as usize);
    out.extend(orderings(counts).map(InfluenceSequence::new));
    Ok(out)
}

/// One half-unit step of a spacetime path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub mv: Move,
    /// Always ±1.
    pub beta: i8,
    pub helicity: Move,
}

/// A zig-zag path on the half-unit lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimePath {
    /// `(t, x)`, starting at the origin; one more point than segments.
    pub points: Vec<(Rational, Rational)>,
    pub segments: Vec<Segment>,
}

impl SpacetimePath {
    pub fn endpoint(&self) -> &(Rational, Rational) {
        self.points.last().expect("a path has at least its origin")
    }
}

/// P-move: `(Δt, Δx) = (+½, +½)`; Q-move: `(+½, −½)`.
pub fn sequence_to_path(seq: &InfluenceSequence, origin: (Rational, Rational)) -> SpacetimePath {
    let half = ratio(1, 2);
    let mut points = Vec::with_capacity(seq.len() + 1);
    let mut segments = Vec::with_capacity(seq.len());
    let (mut t, mut x) = origin;
    points.push((t.clone(), x.clone()));
    for &mv in &seq.moves {
        t += &half;
        match mv {
            Move::P => x += &half,
            Move::Q => x -= &half,
        }
        points.push((t.clone(), x.clone()));
        segments.push(Segment {
            mv,
            beta: mv.beta(),
            helicity: mv,
        });
    }
    SpacetimePath { points, segments }
}

/// Average rates `r_P = N/Δp`, `r_Q = N/Δq`.
pub fn rates(events: &Rational, dp: &Rational, dq: &Rational) -> Result<(Rational, Rational), KinematicsError> {
    if !events.is_positive() {
        return Err(KinematicsError::NonPositive("event count"));
    }
    if !dp.is_positive() {
        return Err(KinematicsError::NonPositive("dp"));
    }
    if !dq.is_positive() {
        return Err(KinematicsError::NonPositive("dq"));
    }
    Ok((events / dp, events / dq))
}

/// Mass, energy and momentum analogs of a pair of rates.
#[derive(Debug, Clone, PartialEq)]
pub struct KinematicState {
    pub r_p: Rational,
    pub r_q: Rational,
    /// `√(r_P r_Q)`.
    pub mass: Surd,
    /// `(r_P + r_Q)/2`.
    pub energy: Rational,
    /// `(r_Q − r_P)/2`.
    pub momentum: Rational,
    /// `p/E`.
    pub beta: Rational,
}

impl KinematicState {
    pub fn mass_squared(&self) -> Rational {
        &self.r_p * &self.r_q
    }
}

pub fn kinematic_state(r_p: &Rational, r_q: &Rational) -> Result<KinematicState, KinematicsError> {
    if !r_p.is_positive() || !r_q.is_positive() {
        return Err(KinematicsError::NonPositive("rate"));
    }
    let (energy, momentum) = energy_momentum(r_p, r_q);
    Ok(KinematicState {
        r_p: r_p.clone(),
        r_q: r_q.clone(),
        mass: Surd::sqrt(&(r_p * r_q)).expect("positive product"),
        beta: &momentum / &energy,
        energy,
        momentum,
    })
}

/// `(E, p) = ((r_P + r_Q)/2, (r_Q − r_P)/2)`.
pub fn energy_momentum<T>(r_p: &T, r_q: &T) -> (T, T)
where
    T: crate::scalar::Scalar,
{
    (
        (r_p.clone() + r_q.clone()).half(),
        (r_q.clone() - r_p.clone()).half(),
    )
}

/// Rates transform inversely to intervals: `r_P' = √(n/m)·r_P`, `r_Q' = √(m/n)·r_Q`.
pub fn transform_rates<T>(r_p: T, r_q: T, relation: &LinearRelation) -> Result<(Surd, Surd), KinematicsError>
where
    T: Into<Surd>,
{
    let (fwd, bwd) = relation.factors()?;
    Ok((r_p.into() * bwd, r_q.into() * fwd))
}

/// `E' = γE + βγp`, `p' = βγE + γp`.
pub fn transform_energy_momentum<T>(energy: T, momentum: T, relation: &LinearRelation) -> Result<(Surd, Surd), KinematicsError>
where
    T: Into<Surd>,
{
    let (Some(gamma), Some(beta_gamma)) = (relation.gamma(), relation.beta_gamma()) else {
        return Err(QuantifyError::DegenerateRelation.into());
    };
    let (e, p): (Surd, Surd) = (energy.into(), momentum.into());
    Ok((
        gamma.clone() * e.clone() + beta_gamma.clone() * p.clone(),
        beta_gamma * e + gamma * p,
    ))
}

/// Seeded i.i.d. moves with `P(P-move) = prob_p`.
pub fn random_sequence(length: usize, prob_p: f64, seed: u64) -> Result<InfluenceSequence, KinematicsError> {
    if !(0.0..=1.0).contains(&prob_p) {
        return Err(KinematicsError::InvalidProbability(prob_p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moves = (0..length)
        .map(|_| if rng.random_bool(prob_p) { Move::P } else { Move::Q })
        .collect();
    Ok(InfluenceSequence::new(moves))
}

/// Net displacement `((P+Q)/2, (P−Q)/2)` of any ordering of `counts`.
pub fn net_displacement(counts: UnorderedInfluenceCount) -> (Rational, Rational) {
    let p = int(counts.p as i64);
    let q = int(counts.q as i64);
    ((&p + &q) / int(2), (p - q) / int(2))
}
