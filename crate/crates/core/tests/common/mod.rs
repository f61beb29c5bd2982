#![allow(dead_code)]

use influence_core::{CausalPoset, ChainId, EventId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct RandomPoset {
    pub events: Vec<(EventId, ChainId)>,
    pub chains: Vec<(ChainId, Vec<EventId>)>,
    pub influence: Vec<(EventId, EventId)>,
}

impl RandomPoset {
    pub fn build(&self) -> CausalPoset {
        CausalPoset::build(self.events.clone(), self.chains.clone(), self.influence.clone()).unwrap()
    }
}

/// Events are numbered in generation order and every influence edge points
/// forward in that order between different chains, so the result is valid.
pub fn random_valid_poset(seed: u64, max_events: usize) -> RandomPoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_events);
    let n_chains = rng.random_range(1..=3usize);
    let chain_names: Vec<ChainId> = (0..n_chains).map(|c| ChainId::from(format!("c{c}"))).collect();
    let mut chains: Vec<(ChainId, Vec<EventId>)> = chain_names.iter().map(|c| (c.clone(), Vec::new())).collect();
    let mut events = Vec::new();
    let mut owner = Vec::new();
    for i in 0..n {
        let c = rng.random_range(0..n_chains);
        let id = EventId::from(format!("e{i}"));
        events.push((id.clone(), chain_names[c].clone()));
        chains[c].1.push(id);
        owner.push(c);
    }
    let density = rng.random_range(0.05..0.5);
    let mut influence = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if owner[i] != owner[j] && rng.random_bool(density) {
                influence.push((events[i].0.clone(), events[j].0.clone()));
            }
        }
    }
    RandomPoset {
        events,
        chains,
        influence,
    }
}

/// Adds one backward edge closing a cycle, when the poset has a cross-chain
/// influence edge to reverse.
pub fn with_cycle(mut p: RandomPoset) -> Option<RandomPoset> {
    let (a, b) = p.influence.first().cloned()?;
    p.influence.push((b, a));
    Some(p)
}

/// Chains `P` and `Q` of `len` events with `p_k → q_{k+d}` and `q_k → p_{k+d}`.
pub fn coordinated_pair(len: usize, d: usize) -> CausalPoset {
    let name = |c: &str, k: usize| EventId::from(format!("{c}{k}"));
    let mut events = Vec::new();
    let mut chains = Vec::new();
    for c in ["p", "q"] {
        let ids: Vec<EventId> = (1..=len).map(|k| name(c, k)).collect();
        events.extend(ids.iter().map(|e| (e.clone(), ChainId::from(c))));
        chains.push((ChainId::from(c), ids));
    }
    let mut influence = Vec::new();
    for k in 1..=len.saturating_sub(d) {
        influence.push((name("p", k), name("q", k + d)));
        influence.push((name("q", k), name("p", k + d)));
    }
    CausalPoset::build(events, chains, influence).unwrap()
}
