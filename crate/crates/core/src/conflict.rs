//! The conflict hypergraph of a knowledge base.

use std::collections::BTreeSet;

use crate::kb::{FactId, FactSet};

/// Minimal inconsistent subsets of an ABox.
///
/// Singleton conflicts are kept apart as self-contradictory facts; `edges` holds the
/// conflicts with at least two elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConflictHypergraph {
    edges: Vec<FactSet>,
    self_contradictory: FactSet,
}

impl ConflictHypergraph {
    /// Builds the hypergraph from arbitrary inconsistent sets, keeping the minimal ones.
    pub fn from_inconsistent_sets(sets: impl IntoIterator<Item = FactSet>) -> Self {
        let mut sets: Vec<FactSet> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        sets.sort_by_key(BTreeSet::len);
        let mut minimal: Vec<FactSet> = Vec::new();
        for s in sets {
            if !minimal.iter().any(|m| m.is_subset(&s)) {
                minimal.push(s);
            }
        }
        let mut self_contradictory = FactSet::new();
        let mut edges = Vec::new();
        for m in minimal {
            if m.len() == 1 {
                self_contradictory.extend(m);
            } else if !m.is_empty() {
                edges.push(m);
            }
        }
        edges.sort_by(|a, b| a.iter().cmp(b.iter()));
        ConflictHypergraph { edges, self_contradictory }
    }

    /// Conflicts with at least two facts, in a canonical order.
    pub fn edges(&self) -> &[FactSet] {
        &self.edges
    }

    /// Facts that are inconsistent on their own.
    pub fn self_contradictory(&self) -> &FactSet {
        &self.self_contradictory
    }

    /// All minimal inconsistent subsets, singletons included.
    pub fn all_conflicts(&self) -> Vec<FactSet> {
        let mut out: Vec<FactSet> = self.self_contradictory.iter().map(|&f| FactSet::from([f])).collect();
        out.extend(self.edges.iter().cloned());
        out
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Largest conflict size.
    pub fn max_arity(&self) -> usize {
        self.edges.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Whether all conflicts are binary.
    pub fn is_binary(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// Whether `set` contains no conflict.
    pub fn is_consistent(&self, set: &FactSet) -> bool {
        self.self_contradictory.is_disjoint(set) && !self.edges.iter().any(|e| e.is_subset(set))
    }

    /// Whether `set ∪ {fact}` contains no conflict, assuming `set` is consistent.
    pub fn can_add(&self, set: &FactSet, fact: FactId) -> bool {
        !self.self_contradictory.contains(&fact)
            && !self
                .edges
                .iter()
                .any(|e| e.contains(&fact) && e.iter().all(|g| *g == fact || set.contains(g)))
    }

    /// Conflicts containing `fact`.
    pub fn edges_with(&self, fact: FactId) -> impl Iterator<Item = &FactSet> {
        self.edges.iter().filter(move |e| e.contains(&fact))
    }

    /// Whether the two facts occur together in some conflict.
    pub fn co_occur(&self, a: FactId, b: FactId) -> bool {
        a != b && self.edges.iter().any(|e| e.contains(&a) && e.contains(&b))
    }

    /// Unordered pairs `(a, b)` with `a < b` that co-occur in a conflict.
    pub fn pairs(&self) -> BTreeSet<(FactId, FactId)> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            for &a in e {
                for &b in e {
                    if a < b {
                        out.insert((a, b));
                    }
                }
            }
        }
        out
    }
}
