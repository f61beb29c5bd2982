//! Causal posets built from particle chains and pairwise influence edges.
//!
//! Each particle is a chain of events in a fixed total order. An influence
//! edge joins an event on one chain (the act of influencing) to an event on
//! another chain (the response). Causal order is the transitive closure of
//! the chain successor edges together with the influence edges.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest poset whose reachability is precomputed as a bitset closure.
pub const CLOSURE_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(pub String);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainId(pub String);

macro_rules! string_id {
    ($t:ident) => {
        impl From<&str> for $t {
            fn from(s: &str) -> Self {
                $t(s.into())
            }
        }
        impl From<String> for $t {
            fn from(s: String) -> Self {
                $t(s)
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
        impl $t {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }
    };
}
string_id!(EventId);
string_id!(ChainId);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("duplicate event id {0}")]
    DuplicateEvent(EventId),
    #[error("chain {0} declared twice")]
    DuplicateChain(ChainId),
    #[error("unknown event id {0}")]
    UnknownEvent(EventId),
    #[error("unknown chain id {0}")]
    UnknownChain(ChainId),
    #[error("event {event} assigned to both chain {first} and chain {second}")]
    EventInTwoChains {
        event: EventId,
        first: ChainId,
        second: ChainId,
    },
    #[error("causal relation contains a cycle through {0}")]
    Cycle(EventId),
}

/// Rule identifiers used in [`Violation::rule`].
pub mod rules {
    pub const INTRA_CHAIN_INFLUENCE: &str = "intra-chain-influence";
    pub const CYCLE: &str = "cycle-detected";
    pub const CHAIN_NOT_TOTAL: &str = "chain-not-total";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
    pub events: Vec<EventId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
enum Reachability {
    /// `rows[i]` has bit `j` set iff event `j` is reachable from `i`.
    Closure(Vec<Vec<u64>>),
    OnDemand,
}

/// A finite causal poset. Immutable once built.
#[derive(Debug, Clone)]
pub struct CausalPoset {
    ids: Vec<EventId>,
    chain_of: Vec<ChainId>,
    index: BTreeMap<EventId, usize>,
    chains: BTreeMap<ChainId, Vec<usize>>,
    influence: Vec<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    reach: Reachability,
}

/// Structural equality: same events with the same chains, chain orders and
/// influence edges. The reachability index is derived data.
impl PartialEq for CausalPoset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids
            && self.chain_of == other.chain_of
            && self.chains == other.chains
            && self.influence == other.influence
    }
}

impl Eq for CausalPoset {}

impl Default for CausalPoset {
    fn default() -> Self {
        CausalPoset::build(Vec::new(), Vec::new(), Vec::new())
            .expect("empty poset is well formed")
    }
}

impl CausalPoset {
    /// Builds a poset from declared events, chain orders and influence edges.
    ///
    /// Only structural well-formedness is checked here; the physical rules
    /// (cross-chain influence, acyclicity, chain totality) are reported by
    /// [`CausalPoset::validate`].
    pub fn build<E, C, I>(events: E, chains: C, influence: I) -> Result<Self, PosetError>
    where
        E: IntoIterator<Item = (EventId, ChainId)>,
        C: IntoIterator<Item = (ChainId, Vec<EventId>)>,
        I: IntoIterator<Item = (EventId, EventId)>,
    {
        let mut ids = Vec::new();
        let mut chain_of = Vec::new();
        let mut index = BTreeMap::new();
        for (id, chain) in events {
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(PosetError::DuplicateEvent(id));
            }
            ids.push(id);
            chain_of.push(chain);
        }

        let lookup = |id: &EventId| index.get(id).copied().ok_or_else(|| PosetError::UnknownEvent(id.clone()));

        let mut chain_map: BTreeMap<ChainId, Vec<usize>> = BTreeMap::new();
        for (chain, members) in chains {
            if chain_map.contains_key(&chain) {
                return Err(PosetError::DuplicateChain(chain));
            }
            let mut order = Vec::with_capacity(members.len());
            for id in &members {
                let i = lookup(id)?;
                if chain_of[i] != chain {
                    return Err(PosetError::EventInTwoChains {
                        event: id.clone(),
                        first: chain_of[i].clone(),
                        second: chain,
                    });
                }
                order.push(i);
            }
            chain_map.insert(chain, order);
        }
        for c in &chain_of {
            if !chain_map.contains_key(c) {
                return Err(PosetError::UnknownChain(c.clone()));
            }
        }

        let mut edges = Vec::new();
        for (src, dst) in influence {
            edges.push((lookup(&src)?, lookup(&dst)?));
        }

        let mut successors = vec![Vec::new(); ids.len()];
        for order in chain_map.values() {
            for w in order.windows(2) {
                successors[w[0]].push(w[1]);
            }
        }
        for &(s, t) in &edges {
            successors[s].push(t);
        }
        for s in &mut successors {
            s.sort_unstable();
            s.dedup();
        }

        let mut poset = CausalPoset {
            ids,
            chain_of,
            index,
            chains: chain_map,
            influence: edges,
            successors,
            reach: Reachability::OnDemand,
        };
        if poset.len() <= CLOSURE_LIMIT {
            poset.reach = Reachability::Closure(poset.closure());
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Events in declaration order with their chains.
    pub fn events(&self) -> impl Iterator<Item = (&EventId, &ChainId)> {
        self.ids.iter().zip(&self.chain_of)
    }

    pub fn chain_ids(&self) -> impl Iterator<Item = &ChainId> {
        self.chains.keys()
    }

    pub fn chain(&self, chain: &ChainId) -> Result<impl Iterator<Item = &EventId> + '_, PosetError> {
        let order = self.chain_indices(chain)?;
        Ok(order.iter().map(move |&i| &self.ids[i]))
    }

    pub fn chain_of(&self, event: &EventId) -> Result<&ChainId, PosetError> {
        Ok(&self.chain_of[self.index_of(event)?])
    }

    pub fn influence_edges(&self) -> impl Iterator<Item = (&EventId, &EventId)> {
        self.influence.iter().map(move |&(s, t)| (&self.ids[s], &self.ids[t]))
    }

    /// Number of chain successor edges.
    pub fn chain_edge_count(&self) -> usize {
        self.chains.values().map(|c| c.len().saturating_sub(1)).sum()
    }

    pub fn index_of(&self, event: &EventId) -> Result<usize, PosetError> {
        self.index
            .get(event)
            .copied()
            .ok_or_else(|| PosetError::UnknownEvent(event.clone()))
    }

    pub fn id(&self, index: usize) -> &EventId {
        &self.ids[index]
    }

    pub(crate) fn chain_indices(&self, chain: &ChainId) -> Result<&[usize], PosetError> {
        self.chains
            .get(chain)
            .map(Vec::as_slice)
            .ok_or_else(|| PosetError::UnknownChain(chain.clone()))
    }

    /// Reflexive causal order: `x ≤ y` iff `y` is reachable from `x`.
    pub fn causal_leq(&self, x: &EventId, y: &EventId) -> Result<bool, PosetError> {
        Ok(self.leq_index(self.index_of(x)?, self.index_of(y)?))
    }

    pub(crate) fn leq_index(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        match &self.reach {
            Reachability::Closure(rows) => rows[x][y / 64] >> (y % 64) & 1 == 1,
            Reachability::OnDemand => self.search(x, y),
        }
    }

    fn search(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                return true;
            }
            for &s in &self.successors[v] {
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
        }
        false
    }

    fn closure(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        let words = n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; n];
        match self.topo_indices() {
            Ok(order) => {
                for &v in order.iter().rev() {
                    let mut row = vec![0u64; words];
                    row[v / 64] |= 1 << (v % 64);
                    for &s in &self.successors[v] {
                        for (w, bits) in row.iter_mut().zip(&rows[s]) {
                            *w |= bits;
                        }
                    }
                    rows[v] = row;
                }
            }
            Err(_) => {
                for (v, row) in rows.iter_mut().enumerate() {
                    let mut queue = VecDeque::from([v]);
                    row[v / 64] |= 1 << (v % 64);
                    while let Some(u) = queue.pop_front() {
                        for &s in &self.successors[u] {
                            if row[s / 64] >> (s % 64) & 1 == 0 {
                                row[s / 64] |= 1 << (s % 64);
                                queue.push_back(s);
                            }
                        }
                    }
                }
            }
        }
        rows
    }

    /// Kahn's algorithm, lowest declaration index first among ready events.
    fn topo_indices(&self) -> Result<Vec<usize>, usize> {
        let n = self.len();
        let mut indegree = vec![0usize; n];
        for succ in &self.successors {
            for &s in succ {
                indegree[s] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &s in &self.successors[v] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.insert(s);
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err((0..n).find(|&v| indegree[v] > 0).unwrap_or(0))
        }
    }

    /// A linear extension of the causal order.
    pub fn topological_sort(&self) -> Result<Vec<&EventId>, PosetError> {
        self.topo_indices()
            .map(|order| order.into_iter().map(|i| &self.ids[i]).collect())
            .map_err(|v| PosetError::Cycle(self.ids[v].clone()))
    }

    /// Checks cross-chain influence, acyclicity and chain totality.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        for &(s, t) in &self.influence {
            if self.chain_of[s] == self.chain_of[t] {
                violations.push(Violation {
                    rule: rules::INTRA_CHAIN_INFLUENCE,
                    message: format!(
                        "intra-chain influence {} -> {} on chain {}",
                        self.ids[s], self.ids[t], self.chain_of[s]
                    ),
                    events: vec![self.ids[s].clone(), self.ids[t].clone()],
                });
            }
        }

        for (chain, order) in &self.chains {
            let mut seen = BTreeSet::new();
            let repeated: Vec<EventId> = order
                .iter()
                .filter(|&&i| !seen.insert(i))
                .map(|&i| self.ids[i].clone())
                .collect();
            if !repeated.is_empty() {
                violations.push(Violation {
                    rule: rules::CHAIN_NOT_TOTAL,
                    message: format!("chain {chain} lists events more than once"),
                    events: repeated,
                });
            }
            let missing: Vec<EventId> = (0..self.len())
                .filter(|&i| &self.chain_of[i] == chain && !seen.contains(&i))
                .map(|i| self.ids[i].clone())
                .collect();
            if !missing.is_empty() {
                violations.push(Violation {
                    rule: rules::CHAIN_NOT_TOTAL,
                    message: format!("events of chain {chain} missing from its order"),
                    events: missing,
                });
            }
        }

        for component in self.cyclic_components() {
            let events: Vec<EventId> = component.iter().map(|&i| self.ids[i].clone()).collect();
            let names: Vec<&str> = events.iter().map(EventId::as_str).collect();
            violations.push(Violation {
                rule: rules::CYCLE,
                message: format!("cycle detected among {}", names.join(", ")),
                events,
            });
        }

        ValidationReport { violations }
    }

    /// Strongly connected components that contain a cycle (Kosaraju).
    fn cyclic_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut finished = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some((v, next)) = stack.pop() {
                if let Some(&s) = self.successors[v].get(next) {
                    stack.push((v, next + 1));
                    if !visited[s] {
                        visited[s] = true;
                        stack.push((s, 0));
                    }
                } else {
                    finished.push(v);
                }
            }
        }

        let mut predecessors = vec![Vec::new(); n];
        for (v, succ) in self.successors.iter().enumerate() {
            for &s in succ {
                predecessors[s].push(v);
            }
        }
        let mut component = vec![usize::MAX; n];
        let mut result = Vec::new();
        for &root in finished.iter().rev() {
            if component[root] != usize::MAX {
                continue;
            }
            let label = result.len();
            let mut members = vec![root];
            component[root] = label;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &p in &predecessors[v] {
                    if component[p] == usize::MAX {
                        component[p] = label;
                        members.push(p);
                        stack.push(p);
                    }
                }
            }
            members.sort_unstable();
            result.push(members);
        }
        result
            .into_iter()
            .filter(|c| c.len() > 1 || self.successors[c[0]].contains(&c[0]))
            .collect()
    }

    /// The dual poset: every chain order and influence edge reversed.
    pub fn reversed(&self) -> CausalPoset {
        let events = self.events().map(|(e, c)| (e.clone(), c.clone()));
        let chains = self.chains.iter().map(|(c, order)| {
            (c.clone(), order.iter().rev().map(|&i| self.ids[i].clone()).collect())
        });
        let influence = self
            .influence
            .iter()
            .map(|&(s, t)| (self.ids[t].clone(), self.ids[s].clone()));
        CausalPoset::build(events, chains, influence).expect("reversal keeps ids resolvable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ids(names: &[&str]) -> Vec<EventId> {
        names.iter().map(|&n| EventId::from(n)).collect()
    }

    /// Two mutually influencing particles, as in a two-chain Hasse diagram.
    fn two_chains(influence: &[(&str, &str)]) -> Result<CausalPoset, PosetError> {
        let events = ["pi1", "pi2", "pi3"]
            .iter()
            .map(|&e| (EventId::from(e), ChainId::from("Pi")))
            .chain(["p1", "p2", "p3"].iter().map(|&e| (EventId::from(e), ChainId::from("P"))));
        let chains = [
            (ChainId::from("Pi"), ids(&["pi1", "pi2", "pi3"])),
            (ChainId::from("P"), ids(&["p1", "p2", "p3"])),
        ];
        let edges = influence.iter().map(|&(a, b)| (EventId::from(a), EventId::from(b)));
        CausalPoset::build(events, chains, edges)
    }

    #[test]
    fn builds_two_chain_poset() {
        let p = two_chains(&[("pi2", "p1")]).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.chain_edge_count(), 4);
        assert_eq!(p.influence_edges().count(), 1);
        assert!(p.validate().ok());
    }

    #[test]
    fn mutually_influencing_chains_are_acyclic() {
        let p = two_chains(&[("pi1", "p1"), ("p2", "pi2"), ("pi3", "p3")]).unwrap();
        assert!(p.validate().ok());
        assert!(p.causal_leq(&"pi1".into(), &"pi3".into()).unwrap());
        assert!(p.causal_leq(&"p1".into(), &"pi3".into()).unwrap());
        assert!(!p.causal_leq(&"p3".into(), &"pi1".into()).unwrap());
    }

    #[test]
    fn empty_poset() {
        let p = CausalPoset::build(Vec::new(), Vec::new(), Vec::new()).unwrap();
        assert!(p.is_empty());
        assert!(p.validate().ok());
        assert_eq!(p, CausalPoset::default());
    }

    #[test]
    fn build_errors() {
        let dup = CausalPoset::build(
            [("a".into(), "A".into()), ("a".into(), "A".into())],
            [("A".into(), ids(&["a"]))],
            [],
        );
        assert_eq!(dup.unwrap_err(), PosetError::DuplicateEvent("a".into()));

        let unresolved = two_chains(&[("pi1", "zz")]);
        assert_eq!(unresolved.unwrap_err(), PosetError::UnknownEvent("zz".into()));

        let two = CausalPoset::build(
            [("a".into(), "A".into()), ("b".into(), "B".into())],
            [("A".into(), ids(&["a"])), ("B".into(), ids(&["b", "a"]))],
            [],
        );
        assert!(matches!(two.unwrap_err(), PosetError::EventInTwoChains { .. }));

        let no_chain = CausalPoset::build([("a".into(), "A".into())], [], []);
        assert_eq!(no_chain.unwrap_err(), PosetError::UnknownChain("A".into()));
    }

    #[test]
    fn intra_chain_influence_is_a_violation() {
        let p = two_chains(&[("p1", "p3")]).unwrap();
        let report = p.validate();
        assert!(!report.ok());
        assert_eq!(report.violations[0].rule, rules::INTRA_CHAIN_INFLUENCE);
    }

    #[test]
    fn two_cycle_is_detected() {
        let p = two_chains(&[("pi1", "p2"), ("p2", "pi1")]).unwrap();
        let report = p.validate();
        let cycle = report.violations.iter().find(|v| v.rule == rules::CYCLE).unwrap();
        assert_eq!(cycle.events, ids(&["pi1", "p2"]));
        assert!(cycle.message.contains("pi1"));
        assert!(p.topological_sort().is_err());
    }

    #[test]
    fn chain_totality_checks_repeats_and_omissions() {
        let p = CausalPoset::build(
            [("a".into(), "A".into()), ("b".into(), "A".into()), ("c".into(), "A".into())],
            [("A".into(), ids(&["a", "b", "a"]))],
            [],
        )
        .unwrap();
        let rules_hit: Vec<_> = p.validate().violations.iter().map(|v| v.rule).collect();
        assert!(rules_hit.iter().filter(|r| **r == rules::CHAIN_NOT_TOTAL).count() == 2);
        assert!(rules_hit.contains(&rules::CYCLE));
    }

    #[test]
    fn leq_basics() {
        let p = two_chains(&[]).unwrap();
        assert!(p.causal_leq(&"p2".into(), &"p2".into()).unwrap());
        assert!(p.causal_leq(&"p1".into(), &"p3".into()).unwrap());
        assert!(!p.causal_leq(&"p1".into(), &"pi3".into()).unwrap());
        assert!(p.causal_leq(&"nope".into(), &"p1".into()).is_err());
    }

    #[test]
    fn on_demand_search_matches_closure() {
        let mut p = two_chains(&[("pi1", "p2"), ("p3", "pi3")]).unwrap();
        let expected: Vec<bool> = (0..6).flat_map(|x| (0..6).map(move |y| (x, y))).map(|(x, y)| p.leq_index(x, y)).collect();
        p.reach = Reachability::OnDemand;
        let actual: Vec<bool> = (0..6).flat_map(|x| (0..6).map(move |y| (x, y))).map(|(x, y)| p.leq_index(x, y)).collect();
        assert_eq!(expected, actual);
    }

    #[test]
    fn reversal_dualizes_order() {
        let p = two_chains(&[("pi1", "p2")]).unwrap();
        let r = p.reversed();
        assert!(r.validate().ok());
        assert!(r.causal_leq(&"p2".into(), &"pi1".into()).unwrap());
        assert!(r.causal_leq(&"p3".into(), &"p1".into()).unwrap());
        assert_eq!(r.reversed(), p);
    }
}
