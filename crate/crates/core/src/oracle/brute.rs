use std::collections::BTreeSet;

use crate::argumentation::{ArgSet, Semantics, Setaf};
use crate::conflict::ConflictHypergraph;
use crate::dllite::Saturator;
use crate::error::{Error, Result};
use crate::kb::{FactId, FactSet, KbMode, KnowledgeBase, ValidatedKb};
use crate::repairs::RepairKind;

/// Largest ABox the fact-level oracles accept.
pub const ORACLE_MAX_FACTS: usize = 12;
/// Largest framework the extension oracle accepts.
pub const ORACLE_MAX_ARGUMENTS: usize = 14;

fn guard(size: usize, limit: usize, what: &'static str) -> Result<()> {
    if size > limit {
        return Err(Error::TooLarge { what, size, limit });
    }
    Ok(())
}

fn to_set(mask: u32) -> FactSet {
    (0..32).filter(|i| mask >> i & 1 == 1).map(FactId::from_index).collect()
}

fn to_mask(set: &FactSet) -> u32 {
    set.iter().fold(0, |m, f| m | 1 << f.index())
}

/// Minimal inconsistent subsets by scanning subsets in order of size.
pub fn brute_conflicts(kb: &KnowledgeBase) -> Result<ConflictHypergraph> {
    let n = kb.abox.len();
    guard(n, ORACLE_MAX_FACTS, "ABox")?;
    let inconsistent: Box<dyn Fn(u32) -> bool> = match &kb.mode {
        KbMode::Ontology => {
            let sat = Saturator::new(&kb.tbox);
            Box::new(move |m| {
                let atoms = (0..n).filter(|i| m >> i & 1 == 1).filter_map(|i| kb.abox.get(FactId::from_index(i)).atom.as_ref());
                !sat.is_consistent(atoms)
            })
        }
        KbMode::Hypergraph { conflicts } => {
            let masks: Vec<u32> = conflicts.iter().map(to_mask).collect();
            Box::new(move |m| masks.iter().any(|&c| c & !m == 0))
        }
    };
    let mut masks: Vec<u32> = (1u32..1 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|&f| f & !m == 0) {
            continue;
        }
        if inconsistent(m) {
            found.push(m);
        }
    }
    Ok(ConflictHypergraph::from_inconsistent_sets(found.into_iter().map(to_set)))
}

struct Space {
    n: usize,
    conflicts: Vec<u32>,
    better: Vec<u32>,
}

impl Space {
    fn new(kb: &ValidatedKb) -> Result<Self> {
        let n = kb.abox().len();
        guard(n, ORACLE_MAX_FACTS, "ABox")?;
        let conflicts = kb.conflicts().all_conflicts().iter().map(to_mask).collect();
        let mut better = vec![0u32; n];
        for (a, b) in kb.priority().iter() {
            better[b.index()] |= 1 << a.index();
        }
        Ok(Space { n, conflicts, better })
    }

    fn consistent(&self, m: u32) -> bool {
        self.conflicts.iter().all(|&c| m & c != c)
    }

    fn consistent_sets(&self) -> Vec<u32> {
        (0u32..1 << self.n).filter(|&m| self.consistent(m)).collect()
    }

    fn repairs(&self, consistent: &[u32]) -> Vec<u32> {
        consistent
            .iter()
            .copied()
            .filter(|&m| (0..self.n).all(|i| m >> i & 1 == 1 || !self.consistent(m | 1 << i)))
            .collect()
    }

    fn preferred(&self, beta: usize, alpha: usize) -> bool {
        self.better[alpha] >> beta & 1 == 1
    }

    fn members(m: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| m >> i & 1 == 1)
    }

    /// Some `β ∈ B \ R` is preferred to every `α ∈ R \ B`.
    fn pareto_improves(&self, b: u32, r: u32) -> bool {
        let lost = r & !b;
        Self::members(b & !r).any(|beta| Self::members(lost).all(|alpha| self.preferred(beta, alpha)))
    }

    /// `B ≠ R` and every `α ∈ R \ B` has some preferred `β ∈ B \ R`.
    fn globally_improves(&self, b: u32, r: u32) -> bool {
        b != r && Self::members(r & !b).all(|alpha| Self::members(b & !r).any(|beta| self.preferred(beta, alpha)))
    }
}

/// All repairs of the knowledge base: maximal subsets containing no conflict.
pub fn brute_repairs(kb: &ValidatedKb) -> Result<BTreeSet<FactSet>> {
    let space = Space::new(kb)?;
    Ok(space.repairs(&space.consistent_sets()).into_iter().map(to_set).collect())
}

/// Optimal repairs straight from their definitions: improvements are searched among all
/// consistent subsets, and completion-optimal repairs come from every completion of the priority.
pub fn brute_optimal(kb: &ValidatedKb, kind: RepairKind) -> Result<BTreeSet<FactSet>> {
    let space = Space::new(kb)?;
    let consistent = space.consistent_sets();
    let repairs = space.repairs(&consistent);
    let out: Vec<u32> = match kind {
        RepairKind::Subset => repairs,
        RepairKind::Pareto => {
            repairs.into_iter().filter(|&r| !consistent.iter().any(|&b| space.pareto_improves(b, r))).collect()
        }
        RepairKind::Global => {
            repairs.into_iter().filter(|&r| !consistent.iter().any(|&b| space.globally_improves(b, r))).collect()
        }
        RepairKind::Completion => completion_optimal(&space)?,
    };
    Ok(out.into_iter().map(to_set).collect())
}

fn completion_optimal(space: &Space) -> Result<Vec<u32>> {
    let n = space.n;
    let co_occur = |a: usize, b: usize| space.conflicts.iter().any(|&c| c >> a & 1 == 1 && c >> b & 1 == 1);
    let mut open = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if co_occur(a, b) && !space.preferred(a, b) && !space.preferred(b, a) {
                open.push((a, b));
            }
        }
    }
    guard(open.len(), 20, "set of unordered conflicting pairs")?;
    let mut results = BTreeSet::new();
    for orientation in 0u32..1 << open.len() {
        let mut better = space.better.clone();
        for (k, &(a, b)) in open.iter().enumerate() {
            if orientation >> k & 1 == 1 {
                better[b] |= 1 << a;
            } else {
                better[a] |= 1 << b;
            }
        }
        let Some(order) = topological(&better) else { continue };
        let mut current = 0u32;
        for f in order {
            if space.consistent(current | 1 << f) {
                current |= 1 << f;
            }
        }
        results.insert(current);
    }
    Ok(results.into_iter().collect())
}

/// Facts from most to least preferred, or `None` on a cycle.
fn topological(better: &[u32]) -> Option<Vec<usize>> {
    let n = better.len();
    let mut placed = 0u32;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&f| placed >> f & 1 == 0 && better[f] & !placed == 0)?;
        placed |= 1 << next;
        order.push(next);
    }
    Some(order)
}

fn attacked(f: &Setaf, e: &ArgSet, a: usize) -> bool {
    f.attacks().iter().any(|att| att.target == a && att.source.is_subset(e))
}

fn conflict_free(f: &Setaf, e: &ArgSet) -> bool {
    !f.attacks().iter().any(|att| e.contains(&att.target) && att.source.is_subset(e))
}

fn defends(f: &Setaf, e: &ArgSet, a: usize) -> bool {
    f.attacks().iter().filter(|att| att.target == a).all(|att| att.source.iter().any(|&s| attacked(f, e, s)))
}

/// Extensions by scanning every subset of arguments.
pub fn brute_extensions(f: &Setaf, sem: Semantics) -> Result<BTreeSet<ArgSet>> {
    let n = f.len();
    guard(n, ORACLE_MAX_ARGUMENTS, "framework")?;
    let subsets: Vec<ArgSet> = (0u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    let admissible = |e: &ArgSet| conflict_free(f, e) && e.iter().all(|&a| defends(f, e, a));
    let complete = |e: &ArgSet| admissible(e) && (0..n).all(|a| e.contains(&a) || !defends(f, e, a));
    let out: BTreeSet<ArgSet> = match sem {
        Semantics::Stable => subsets
            .into_iter()
            .filter(|e| conflict_free(f, e) && (0..n).all(|a| e.contains(&a) || attacked(f, e, a)))
            .collect(),
        Semantics::Complete => subsets.into_iter().filter(|e| complete(e)).collect(),
        Semantics::Preferred => {
            let adm: Vec<ArgSet> = subsets.into_iter().filter(|e| admissible(e)).collect();
            adm.iter().filter(|e| !adm.iter().any(|d| d.len() > e.len() && e.is_subset(d))).cloned().collect()
        }
        Semantics::Grounded => {
            let comp: Vec<ArgSet> = subsets.into_iter().filter(|e| complete(e)).collect();
            comp.iter().filter(|e| comp.iter().all(|d| e.is_subset(d))).cloned().collect()
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::argumentation::Attack;

    #[test]
    fn two_cycle() {
        let f = Setaf::numbered(2, [Attack::new([0], 1), Attack::new([1], 0)]).unwrap();
        let stable = brute_extensions(&f, Semantics::Stable).unwrap();
        assert_eq!(stable, BTreeSet::from([ArgSet::from([0]), ArgSet::from([1])]));
        assert_eq!(brute_extensions(&f, Semantics::Grounded).unwrap(), BTreeSet::from([ArgSet::new()]));
        assert_eq!(brute_extensions(&f, Semantics::Complete).unwrap().len(), 3);
    }

    #[test]
    fn rejects_large_inputs() {
        let f = Setaf::numbered(15, []).unwrap();
        assert!(matches!(brute_extensions(&f, Semantics::Stable), Err(Error::TooLarge { .. })));
    }
}
