use std::collections::BTreeMap;

use super::{FactId, FactSet, KbMode, KnowledgeBase, PriorityRelation};
use crate::conflict::ConflictHypergraph;
use crate::dllite::{self, ClosedTBox};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A knowledge base whose priority relation has been checked against its conflicts.
///
/// Self-contradictory facts stay in the ABox but are excluded from [`ValidatedKb::active`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedKb {
    kb: KnowledgeBase,
    closed: Option<ClosedTBox>,
    conflicts: ConflictHypergraph,
    active: FactSet,
    limits: Limits,
}

/// Checks that the priority is acyclic and only relates facts sharing a conflict.
///
/// `conflicts` must be the conflicts of `kb`.
pub fn validate_kb(kb: KnowledgeBase, conflicts: ConflictHypergraph) -> Result<ValidatedKb> {
    let closed = match kb.mode {
        KbMode::Ontology => Some(dllite::close_tbox(&kb.tbox)),
        KbMode::Hypergraph { .. } => None,
    };
    validate_with(kb, closed, conflicts)
}

fn validate_with(kb: KnowledgeBase, closed: Option<ClosedTBox>, conflicts: ConflictHypergraph) -> Result<ValidatedKb> {
    if let Some(cycle) = find_cycle(&kb.priority, kb.abox.len()) {
        return Err(Error::CyclicPriority { cycle: cycle.iter().map(|&f| kb.abox.get(f).id.clone()).collect() });
    }
    for (a, b) in kb.priority.iter() {
        if !conflicts.co_occur(a, b) {
            return Err(Error::PriorityOutsideConflict {
                higher: kb.abox.get(a).id.clone(),
                lower: kb.abox.get(b).id.clone(),
            });
        }
    }
    let active = kb.abox.all().difference(conflicts.self_contradictory()).copied().collect();
    Ok(ValidatedKb { kb, closed, conflicts, active, limits: Limits::default() })
}

/// Returns a cycle of the relation, listed from its first element, if there is one.
pub(crate) fn find_cycle(rel: &PriorityRelation, n: usize) -> Option<Vec<FactId>> {
    let mut succ: BTreeMap<FactId, Vec<FactId>> = BTreeMap::new();
    for (a, b) in rel.iter() {
        if a == b {
            return Some(vec![a]);
        }
        succ.entry(a).or_default().push(b);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<FactId> = Vec::new();
    fn dfs(
        v: FactId,
        succ: &BTreeMap<FactId, Vec<FactId>>,
        state: &mut [u8],
        stack: &mut Vec<FactId>,
    ) -> Option<Vec<FactId>> {
        state[v.index()] = 1;
        stack.push(v);
        for &w in succ.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            match state[w.index()] {
                1 => {
                    let start = stack.iter().position(|&x| x == w).expect("on stack");
                    return Some(stack[start..].to_vec());
                }
                0 => {
                    if let Some(c) = dfs(w, succ, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[v.index()] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = dfs(FactId::from_index(v), &succ, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

impl ValidatedKb {
    /// Computes the conflicts of `kb` and validates it.
    pub fn from_kb(kb: KnowledgeBase) -> Result<Self> {
        match &kb.mode {
            KbMode::Ontology => {
                let closed = dllite::close_tbox(&kb.tbox);
                let conflicts = dllite::conflicts(&closed, &kb.abox);
                validate_with(kb, Some(closed), conflicts)
            }
            KbMode::Hypergraph { conflicts } => {
                let conflicts = ConflictHypergraph::from_inconsistent_sets(conflicts.iter().cloned());
                validate_with(kb, None, conflicts)
            }
        }
    }

    /// Replaces the size limits used by the exhaustive procedures.
    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn into_kb(self) -> KnowledgeBase {
        self.kb
    }

    pub fn abox(&self) -> &super::ABox {
        &self.kb.abox
    }

    pub fn priority(&self) -> &PriorityRelation {
        &self.kb.priority
    }

    /// The closed TBox, absent in hypergraph mode.
    pub fn closed_tbox(&self) -> Option<&ClosedTBox> {
        self.closed.as_ref()
    }

    pub fn conflicts(&self) -> &ConflictHypergraph {
        &self.conflicts
    }

    /// Facts that take part in reasoning: everything except self-contradictory facts.
    pub fn active(&self) -> &FactSet {
        &self.active
    }

    /// Self-contradictory facts removed before reasoning.
    pub fn removed(&self) -> &FactSet {
        self.conflicts.self_contradictory()
    }

    pub fn prefers(&self, a: FactId, b: FactId) -> bool {
        self.kb.priority.prefers(a, b)
    }

    /// Identifier of a fact.
    pub fn name(&self, f: FactId) -> &str {
        &self.kb.abox.get(f).id
    }

    /// Sorted identifiers of a set.
    pub fn names(&self, set: &FactSet) -> Vec<String> {
        self.kb.abox.names(set)
    }

    /// Active facts sorted by identifier, the canonical processing order.
    pub fn ordered_active(&self) -> Vec<FactId> {
        let mut v: Vec<FactId> = self.active.iter().copied().collect();
        v.sort_by(|a, b| self.name(*a).cmp(self.name(*b)));
        v
    }

    /// Same knowledge base with another priority relation, revalidated.
    pub fn with_priority(&self, priority: PriorityRelation) -> Result<Self> {
        let mut kb = self.kb.clone();
        kb.priority = priority;
        let mut v = validate_with(kb, self.closed.clone(), self.conflicts.clone())?;
        v.limits = self.limits;
        Ok(v)
    }
}
