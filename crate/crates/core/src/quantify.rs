//! Chain-based quantification of a causal poset.
//!
//! An observer chain is valuated by counting (`v(p_k) = k·μ`). Events are
//! located relative to a chain by their forward and backward projections,
//! intervals by the lengths of the projected closed intervals. Two
//! coordinated chains turn an interval pair `(Δp, Δq)` into time and space
//! components, and linearly related chains are connected by the pair
//! transform.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};

use crate::causet::{CausalPoset, ChainId, EventId, PosetError};
use crate::scalar::{int, Rational, Scalar};
use crate::surd::Surd;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantifyError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("event {event} is not on chain {chain}")]
    NotOnChain { event: EventId, chain: ChainId },
    #[error("interval endpoints {0} and {1} are in reverse chain order")]
    ReversedInterval(EventId, EventId),
    #[error("unit of measure must be positive")]
    NonPositiveUnit,
    #[error("unquantifiable interval: {event} has no {direction} projection onto chain {chain}")]
    Unquantifiable {
        event: EventId,
        chain: ChainId,
        direction: Direction,
    },
    #[error("projection constants must satisfy m >= 0, n >= 0 and m + n > 0")]
    InvalidRelation,
    #[error("pair transform needs m > 0 and n > 0")]
    DegenerateRelation,
    #[error("length and distance are defined only for pairs from coordinated chains")]
    NotCoordinated,
    #[error("coordination undecidable: {event} has no forward projection onto chain {chain}")]
    CoordinationUndecidable { event: EventId, chain: ChainId },
    #[error("chain {chain} has no element at position {position}")]
    OutOfRange { chain: ChainId, position: usize },
    #[error("speed {0} is not below 1 in magnitude")]
    SpeedOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl core::fmt::Display for Direction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// Counting valuation of an observer chain: `v(p_k) = k·μ`, `k` starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainValuation {
    chain: ChainId,
    mu: Rational,
    members: Vec<EventId>,
}

impl ChainValuation {
    pub fn new(poset: &CausalPoset, chain: &ChainId, mu: Rational) -> Result<Self, QuantifyError> {
        if !mu.is_positive() {
            return Err(QuantifyError::NonPositiveUnit);
        }
        let members = poset.chain(chain)?.cloned().collect();
        Ok(ChainValuation {
            chain: chain.clone(),
            mu,
            members,
        })
    }

    /// Valuation in natural units (`μ = 1`).
    pub fn natural(poset: &CausalPoset, chain: &ChainId) -> Result<Self, QuantifyError> {
        Self::new(poset, chain, <Rational as One>::one())
    }

    pub fn chain(&self) -> &ChainId {
        &self.chain
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, position: usize) -> Result<&EventId, QuantifyError> {
        self.members.get(position).ok_or_else(|| QuantifyError::OutOfRange {
            chain: self.chain.clone(),
            position,
        })
    }

    pub fn position(&self, event: &EventId) -> Result<usize, QuantifyError> {
        self.members
            .iter()
            .position(|e| e == event)
            .ok_or_else(|| QuantifyError::NotOnChain {
                event: event.clone(),
                chain: self.chain.clone(),
            })
    }

    pub fn value(&self, event: &EventId) -> Result<Rational, QuantifyError> {
        Ok(int(self.position(event)? as i64) * &self.mu)
    }
}

/// Length `(k_b − k_a)·μ` of the closed chain interval `[a, b]`.
pub fn chain_length(valuation: &ChainValuation, a: &EventId, b: &EventId) -> Result<Rational, QuantifyError> {
    let (ka, kb) = (valuation.position(a)?, valuation.position(b)?);
    if ka > kb {
        return Err(QuantifyError::ReversedInterval(a.clone(), b.clone()));
    }
    Ok(int((kb - ka) as i64) * &valuation.mu)
}

/// Result of projecting an event onto a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Present(EventId),
    Absent,
}

impl Projection {
    pub fn event(&self) -> Option<&EventId> {
        match self {
            Projection::Present(e) => Some(e),
            Projection::Absent => None,
        }
    }
}

/// The least chain element `c` with `x ≤ c`.
pub fn forward_project(poset: &CausalPoset, chain: &ChainId, x: &EventId) -> Result<Projection, PosetError> {
    let xi = poset.index_of(x)?;
    let order = poset.chain_indices(chain)?;
    // `x ≤ c_i` is upward closed along the chain.
    let first = order.partition_point(|&c| !poset.leq_index(xi, c));
    Ok(order
        .get(first)
        .map_or(Projection::Absent, |&c| Projection::Present(poset.id(c).clone())))
}

/// The greatest chain element `c` with `c ≤ x`.
pub fn backward_project(poset: &CausalPoset, chain: &ChainId, x: &EventId) -> Result<Projection, PosetError> {
    let xi = poset.index_of(x)?;
    let order = poset.chain_indices(chain)?;
    let below = order.partition_point(|&c| poset.leq_index(c, xi));
    Ok(match below {
        0 => Projection::Absent,
        k => Projection::Present(poset.id(order[k - 1]).clone()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// `(Δp, Δp̄)`: forward and backward projections onto one chain.
    SingleChain,
    /// `(Δp, Δq)`: forward projections onto two coordinated chains.
    Coordinated,
}

/// Pair quantification of an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPair<T = Rational> {
    pub dp: T,
    pub dq: T,
    pub mode: PairMode,
}

impl<T: Scalar> IntervalPair<T> {
    pub fn coordinated(dp: T, dq: T) -> Self {
        IntervalPair {
            dp,
            dq,
            mode: PairMode::Coordinated,
        }
    }

    pub fn single_chain(dp: T, dq: T) -> Self {
        IntervalPair {
            dp,
            dq,
            mode: PairMode::SingleChain,
        }
    }

    pub fn to_f64(&self) -> IntervalPair<f64> {
        IntervalPair {
            dp: self.dp.to_f64(),
            dq: self.dq.to_f64(),
            mode: self.mode,
        }
    }
}

/// The observer frame used to quantify an interval.
#[derive(Debug, Clone, Copy)]
pub enum Frame<'a> {
    Single(&'a ChainValuation),
    Coordinated(&'a ChainValuation, &'a ChainValuation),
}

fn projected_value(
    poset: &CausalPoset,
    valuation: &ChainValuation,
    x: &EventId,
    direction: Direction,
) -> Result<Rational, QuantifyError> {
    let projection = match direction {
        Direction::Forward => forward_project(poset, valuation.chain(), x)?,
        Direction::Backward => backward_project(poset, valuation.chain(), x)?,
    };
    match projection {
        Projection::Present(e) => valuation.value(&e),
        Projection::Absent => Err(QuantifyError::Unquantifiable {
            event: x.clone(),
            chain: valuation.chain().clone(),
            direction,
        }),
    }
}

/// Interval pair of the generalized interval `[a, b]`.
pub fn interval_pair(
    poset: &CausalPoset,
    a: &EventId,
    b: &EventId,
    frame: Frame<'_>,
) -> Result<IntervalPair, QuantifyError> {
    use Direction::{Backward, Forward};
    match frame {
        Frame::Single(p) => {
            let dp = projected_value(poset, p, b, Forward)? - projected_value(poset, p, a, Forward)?;
            let dq = projected_value(poset, p, b, Backward)? - projected_value(poset, p, a, Backward)?;
            Ok(IntervalPair::single_chain(dp, dq))
        }
        Frame::Coordinated(p, q) => {
            let dp = projected_value(poset, p, b, Forward)? - projected_value(poset, p, a, Forward)?;
            let dq = projected_value(poset, q, b, Forward)? - projected_value(poset, q, a, Forward)?;
            Ok(IntervalPair::coordinated(dp, dq))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalClass {
    ChainLike,
    AntichainLike,
    ProjectionLike,
}

impl IntervalClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IntervalClass::ChainLike => "chain-like",
            IntervalClass::AntichainLike => "antichain-like",
            IntervalClass::ProjectionLike => "projection-like",
        }
    }
}

/// `Δs² = Δp·Δq` together with its sign class.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalScalar<T = Rational> {
    pub value: T,
    pub class: IntervalClass,
}

pub fn interval_scalar<T: Scalar>(pair: &IntervalPair<T>) -> IntervalScalar<T> {
    let value = pair.dp.clone() * pair.dq.clone();
    let class = match value.sign() {
        Ordering::Greater => IntervalClass::ChainLike,
        Ordering::Less => IntervalClass::AntichainLike,
        Ordering::Equal => IntervalClass::ProjectionLike,
    };
    IntervalScalar { value, class }
}

/// Constant projection between two chains: closed intervals of length
/// `k = √(mn)` project forward to length `m` and backward to length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRelation {
    m: Rational,
    n: Rational,
}

impl LinearRelation {
    pub fn new(m: Rational, n: Rational) -> Result<Self, QuantifyError> {
        if m.is_negative() || n.is_negative() || (m.is_zero() && n.is_zero()) {
            return Err(QuantifyError::InvalidRelation);
        }
        Ok(LinearRelation { m, n })
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn n(&self) -> &Rational {
        &self.n
    }

    pub fn is_degenerate(&self) -> bool {
        self.m.is_zero() || self.n.is_zero()
    }

    pub fn k(&self) -> Surd {
        Surd::sqrt(&(&self.m * &self.n)).expect("m, n are nonnegative")
    }

    /// `β = (m − n)/(m + n)`, exactly ±1 when one constant vanishes.
    pub fn beta(&self) -> Rational {
        (&self.m - &self.n) / (&self.m + &self.n)
    }

    /// `γ = (m + n)/(2√(mn))`; `None` when `|β| = 1`.
    pub fn gamma(&self) -> Option<Surd> {
        let k = self.k();
        (!k.is_zero()).then(|| Surd::from_rational((&self.m + &self.n) / int(2)) / k)
    }

    /// `βγ = (m − n)/(2√(mn))`.
    pub fn beta_gamma(&self) -> Option<Surd> {
        let k = self.k();
        (!k.is_zero()).then(|| Surd::from_rational((&self.m - &self.n) / int(2)) / k)
    }

    /// `(√(m/n), √(n/m))`.
    pub fn factors(&self) -> Result<(Surd, Surd), QuantifyError> {
        if self.is_degenerate() {
            return Err(QuantifyError::DegenerateRelation);
        }
        let fwd = Surd::sqrt(&(&self.m / &self.n)).expect("positive ratio");
        let bwd = Surd::sqrt(&(&self.n / &self.m)).expect("positive ratio");
        Ok((fwd, bwd))
    }
}

/// `(Δp, Δq) ↦ (Δp·√(m/n), Δq·√(n/m))`, computed exactly.
pub fn pair_transform<T>(pair: &IntervalPair<T>, relation: &LinearRelation) -> Result<IntervalPair<Surd>, QuantifyError>
where
    T: Clone + Into<Surd>,
{
    let (fwd, bwd) = relation.factors()?;
    Ok(IntervalPair {
        dp: pair.dp.clone().into() * fwd,
        dq: pair.dq.clone().into() * bwd,
        mode: pair.mode,
    })
}

/// Floating-point pair transform for arbitrary real constants.
pub fn pair_transform_f64(pair: &IntervalPair<f64>, m: f64, n: f64) -> Result<IntervalPair<f64>, QuantifyError> {
    if !(m > 0.0 && n > 0.0) {
        return Err(QuantifyError::DegenerateRelation);
    }
    Ok(IntervalPair {
        dp: pair.dp * libm::sqrt(m / n),
        dq: pair.dq * libm::sqrt(n / m),
        mode: pair.mode,
    })
}

/// Checks that every closed interval of each chain, between the given chain
/// positions, forward projects to a closed interval of equal length on the
/// other chain.
pub fn check_coordination(
    poset: &CausalPoset,
    p: &ChainValuation,
    q: &ChainValuation,
    range: RangeInclusive<usize>,
) -> Result<bool, QuantifyError> {
    for (from, onto) in [(p, q), (q, p)] {
        let mut projected = Vec::new();
        for k in range.clone() {
            let e = from.member(k)?;
            let value = match forward_project(poset, onto.chain(), e)? {
                Projection::Present(target) => onto.value(&target)?,
                Projection::Absent => {
                    return Err(QuantifyError::CoordinationUndecidable {
                        event: e.clone(),
                        chain: onto.chain().clone(),
                    })
                }
            };
            projected.push((from.value(e)?, value));
        }
        for (i, (vi, wi)) in projected.iter().enumerate() {
            for (vj, wj) in &projected[i + 1..] {
                if vj - vi != wj - wi {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `D = (Δp − Δq)/2` for an interval with one endpoint on each chain.
pub fn distance<T: Scalar>(pair: &IntervalPair<T>) -> Result<T, QuantifyError> {
    match pair.mode {
        PairMode::Coordinated => Ok((pair.dp.clone() - pair.dq.clone()).half()),
        PairMode::SingleChain => Err(QuantifyError::NotCoordinated),
    }
}

/// `(Δp + Δq)/2`.
pub fn length<T: Scalar>(pair: &IntervalPair<T>) -> Result<T, QuantifyError> {
    match pair.mode {
        PairMode::Coordinated => Ok((pair.dp.clone() + pair.dq.clone()).half()),
        PairMode::SingleChain => Err(QuantifyError::NotCoordinated),
    }
}

/// Symmetric-antisymmetric decomposition `(Δt, Δt) + (Δx, −Δx)`.
pub fn decompose<T: Scalar>(pair: &IntervalPair<T>) -> (IntervalPair<T>, IntervalPair<T>) {
    let st = to_spacetime(pair);
    (
        IntervalPair {
            dp: st.dt.clone(),
            dq: st.dt,
            mode: pair.mode,
        },
        IntervalPair {
            dp: st.dx.clone(),
            dq: -st.dx,
            mode: pair.mode,
        },
    )
}

/// Time and space components of an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeInterval<T = Rational> {
    pub dt: T,
    pub dx: T,
}

impl<T: Scalar> SpacetimeInterval<T> {
    pub fn new(dt: T, dx: T) -> Self {
        SpacetimeInterval { dt, dx }
    }

    /// Inverse change of variables: `Δp = Δt + Δx`, `Δq = Δt − Δx`.
    pub fn to_pair(&self) -> IntervalPair<T> {
        IntervalPair::coordinated(self.dt.clone() + self.dx.clone(), self.dt.clone() - self.dx.clone())
    }
}

pub fn to_spacetime<T: Scalar>(pair: &IntervalPair<T>) -> SpacetimeInterval<T> {
    SpacetimeInterval {
        dt: (pair.dp.clone() + pair.dq.clone()).half(),
        dx: (pair.dp.clone() - pair.dq.clone()).half(),
    }
}

/// `Δt² − Δx²`.
pub fn metric_scalar<T: Scalar>(st: &SpacetimeInterval<T>) -> T {
    st.dt.clone() * st.dt.clone() - st.dx.clone() * st.dx.clone()
}

/// Passive boost: `Δt' = γ(Δt − βΔx)`, `Δx' = γ(Δx − βΔt)`.
///
/// The pair transform with constants `(m, n)` is this boost with
/// `beta = −(m − n)/(m + n)`.
pub fn lorentz_transform(st: &SpacetimeInterval<f64>, beta: f64) -> Result<SpacetimeInterval<f64>, QuantifyError> {
    if !(beta.abs() < 1.0) {
        return Err(QuantifyError::SpeedOutOfRange(beta));
    }
    let gamma = 1.0 / libm::sqrt((1.0 - beta) * (1.0 + beta));
    Ok(SpacetimeInterval {
        dt: gamma * (st.dt - beta * st.dx),
        dx: gamma * (st.dx - beta * st.dt),
    })
}

/// Exact version of [`lorentz_transform`] for rational `beta`.
pub fn lorentz_transform_exact<T>(st: &SpacetimeInterval<T>, beta: &Rational) -> Result<SpacetimeInterval<Surd>, QuantifyError>
where
    T: Clone + Into<Surd>,
{
    if beta.abs() >= <Rational as One>::one() {
        return Err(QuantifyError::SpeedOutOfRange(Scalar::to_f64(beta)));
    }
    let one = <Rational as One>::one();
    let gamma = Surd::sqrt(&(&one - beta * beta))
        .and_then(|root| root.recip())
        .expect("1 − β² is positive");
    let b = Surd::from_rational(beta.clone());
    let (dt, dx): (Surd, Surd) = (st.dt.clone().into(), st.dx.clone().into());
    Ok(SpacetimeInterval {
        dt: gamma.clone() * (dt.clone() - b.clone() * dx.clone()),
        dx: gamma * (dx - b * dt),
    })
}

/// Relativistic composition of two speeds.
pub fn compose_speeds(b1: f64, b2: f64) -> f64 {
    (b1 + b2) / (1.0 + b1 * b2)
}

/// Projection coordinates of one event relative to the observer chains.
#[derive(Debug, Clone, PartialEq)]
pub struct EventCoordinates {
    pub event: EventId,
    pub p_fwd: Option<Rational>,
    pub p_bwd: Option<Rational>,
    pub q_fwd: Option<Rational>,
    pub q_bwd: Option<Rational>,
    /// `(p_fwd + q_fwd)/2` in coordinated mode.
    pub t: Option<Rational>,
    /// `(p_fwd − q_fwd)/2` in coordinated mode.
    pub x: Option<Rational>,
}

/// Per-event projection valuations onto `p` (and `q` when given).
pub fn event_coordinates(
    poset: &CausalPoset,
    p: &ChainValuation,
    q: Option<&ChainValuation>,
) -> Result<Vec<EventCoordinates>, QuantifyError> {
    let value = |v: &ChainValuation, proj: Projection| -> Result<Option<Rational>, QuantifyError> {
        proj.event().map(|e| v.value(e)).transpose()
    };
    let mut rows = Vec::with_capacity(poset.len());
    for (event, _) in poset.events() {
        let p_fwd = value(p, forward_project(poset, p.chain(), event)?)?;
        let p_bwd = value(p, backward_project(poset, p.chain(), event)?)?;
        let (q_fwd, q_bwd) = match q {
            Some(q) => (
                value(q, forward_project(poset, q.chain(), event)?)?,
                value(q, backward_project(poset, q.chain(), event)?)?,
            ),
            None => (None, None),
        };
        let (t, x) = match (&p_fwd, &q_fwd) {
            (Some(pf), Some(qf)) => {
                let st = to_spacetime(&IntervalPair::coordinated(pf.clone(), qf.clone()));
                (Some(st.dt), Some(st.dx))
            }
            _ => (None, None),
        };
        rows.push(EventCoordinates {
            event: event.clone(),
            p_fwd,
            p_bwd,
            q_fwd,
            q_bwd,
            t,
            x,
        });
    }
    Ok(rows)
}
