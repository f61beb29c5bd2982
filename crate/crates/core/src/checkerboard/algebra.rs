//! Series and parallel composition of measurement sequences.
//!
//! A sequence is a list of slots; a slot holds one outcome, or several when
//! the measurement was coarse grained. Amplitudes assigned per consecutive
//! pair of outcomes extend to whole sequences: series composition multiplies
//! amplitudes and parallel composition adds them.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Amplitude, CheckerboardError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementSequence<T: Ord> {
    slots: Vec<BTreeSet<T>>,
}

impl<T: Ord + Clone> MeasurementSequence<T> {
    /// A sequence of definite outcomes.
    pub fn new(outcomes: impl IntoIterator<Item = T>) -> Self {
        MeasurementSequence {
            slots: outcomes.into_iter().map(|o| BTreeSet::from([o])).collect(),
        }
    }

    /// Slots may be coarse grained; empty slots are rejected.
    pub fn from_slots(slots: Vec<BTreeSet<T>>) -> Result<Self, CheckerboardError> {
        if slots.iter().any(BTreeSet::is_empty) {
            return Err(CheckerboardError::IncompatibleShapes);
        }
        Ok(MeasurementSequence { slots })
    }

    pub fn slots(&self) -> &[BTreeSet<T>] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn is_definite(&self) -> bool {
        self.slots.iter().all(|s| s.len() == 1)
    }

    /// Every definite sequence contained in this one, in slot order.
    pub fn expansions(&self) -> Vec<Vec<T>> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for slot in &self.slots {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    slot.iter().map(move |o| {
                        let mut next = prefix.clone();
                        next.push(o.clone());
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// Sum over expansions of the product of consecutive pair amplitudes.
    pub fn amplitude(&self, pair: impl Fn(&T, &T) -> Amplitude) -> Amplitude {
        self.expansions()
            .iter()
            .map(|seq| seq.windows(2).map(|w| pair(&w[0], &w[1])).fold(Amplitude::ONE, |a, b| a * b))
            .sum()
    }
}

/// `[m1, m2] · [m2, m3] = [m1, m2, m3]`; the shared element appears once.
pub fn series_join<T: Ord + Clone>(
    a: &MeasurementSequence<T>,
    b: &MeasurementSequence<T>,
) -> Result<MeasurementSequence<T>, CheckerboardError> {
    match (a.slots.last(), b.slots.first()) {
        (Some(end), Some(start)) if end == start => {
            let mut slots = a.slots.clone();
            slots.extend(b.slots[1..].iter().cloned());
            Ok(MeasurementSequence { slots })
        }
        _ => Err(CheckerboardError::EndpointMismatch),
    }
}

/// `[m1, m2', m3] ∨ [m1, m2'', m3] = [m1, (m2', m2''), m3]` for disjoint
/// differing slots.
pub fn parallel_join<T: Ord + Clone>(
    a: &MeasurementSequence<T>,
    b: &MeasurementSequence<T>,
) -> Result<MeasurementSequence<T>, CheckerboardError> {
    if a.len() != b.len() {
        return Err(CheckerboardError::IncompatibleShapes);
    }
    let mut differing = a.slots.iter().zip(&b.slots).enumerate().filter(|(_, (x, y))| x != y);
    let (i, (x, y)) = differing.next().ok_or(CheckerboardError::IncompatibleShapes)?;
    if differing.next().is_some() || !x.is_disjoint(y) {
        return Err(CheckerboardError::IncompatibleShapes);
    }
    let mut slots = a.slots.clone();
    slots[i] = x.union(y).cloned().collect();
    Ok(MeasurementSequence { slots })
}
