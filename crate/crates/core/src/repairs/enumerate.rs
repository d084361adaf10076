use std::collections::{BTreeSet, HashSet};

use super::{check_repair, sort_sets, Repair, RepairKind};
use crate::error::Result;
use crate::kb::{FactId, FactSet, ValidatedKb};

/// Lazy enumeration of the maximal consistent subsets, in lexicographic order of their
/// sorted identifier lists.
pub struct RepairIter<'a> {
    kb: &'a ValidatedKb,
    order: Vec<FactId>,
    set: FactSet,
    // choice per decided position: true = included
    choices: Vec<bool>,
    done: bool,
}

impl<'a> RepairIter<'a> {
    fn new(kb: &'a ValidatedKb) -> Self {
        RepairIter { kb, order: kb.ordered_active(), set: FactSet::new(), choices: Vec::new(), done: false }
    }

    /// Whether an excluded fact at `pos` can still be blocked by later inclusions.
    fn can_be_blocked(&self, pos: usize) -> bool {
        let f = self.order[pos];
        let later: BTreeSet<FactId> = self.order[pos + 1..].iter().copied().collect();
        self.kb
            .conflicts()
            .edges_with(f)
            .any(|e| e.iter().all(|g| *g == f || self.set.contains(g) || later.contains(g)))
    }

    fn backtrack(&mut self) {
        while let Some(included) = self.choices.pop() {
            let pos = self.choices.len();
            if included {
                self.set.remove(&self.order[pos]);
                if self.can_be_blocked(pos) {
                    self.choices.push(false);
                    return;
                }
            }
        }
        self.done = true;
    }

    fn is_maximal(&self) -> bool {
        self.order.iter().all(|&f| self.set.contains(&f) || !self.kb.conflicts().can_add(&self.set, f))
    }
}

impl Iterator for RepairIter<'_> {
    type Item = Repair;

    fn next(&mut self) -> Option<Repair> {
        while !self.done {
            let d = self.choices.len();
            if d == self.order.len() {
                let found = self.is_maximal().then(|| self.set.clone());
                self.backtrack();
                if found.is_some() {
                    return found;
                }
                continue;
            }
            let f = self.order[d];
            if self.kb.conflicts().can_add(&self.set, f) {
                self.set.insert(f);
                self.choices.push(true);
            } else {
                self.choices.push(false);
            }
        }
        None
    }
}

/// All repairs, lazily.
pub fn repairs(kb: &ValidatedKb) -> Result<RepairIter<'_>> {
    kb.limits().check_facts(kb.active().len())?;
    Ok(RepairIter::new(kb))
}

/// Optimal repairs of the given kind, lazily, in canonical order except for completion repairs
/// which come in discovery order.
pub fn optimal_repairs<'a>(kb: &'a ValidatedKb, kind: RepairKind) -> Result<Box<dyn Iterator<Item = Repair> + 'a>> {
    let all = repairs(kb)?;
    Ok(match kind {
        RepairKind::Subset => Box::new(all),
        RepairKind::Pareto | RepairKind::Global => Box::new(
            all.filter(move |r| check_repair(kb, r, kind).map(|c| c.holds()).unwrap_or(false)),
        ),
        RepairKind::Completion => {
            let mut found = Vec::new();
            completion_search(kb, &mut |r| {
                found.push(r);
                true
            });
            Box::new(found.into_iter())
        }
    })
}

/// Optimal repairs of the given kind, sorted lexicographically.
pub fn enumerate_optimal(kb: &ValidatedKb, kind: RepairKind) -> Result<Vec<Repair>> {
    let mut out: Vec<Repair> = optimal_repairs(kb, kind)?.collect();
    sort_sets(kb, &mut out);
    Ok(out)
}

/// Whether exactly one optimal repair of the given kind exists.
pub fn uniqueness(kb: &ValidatedKb, kind: RepairKind) -> Result<bool> {
    if kind == RepairKind::Completion {
        kb.limits().check_facts(kb.active().len())?;
        let mut count = 0;
        completion_search(kb, &mut |_| {
            count += 1;
            count < 2
        });
        return Ok(count == 1);
    }
    Ok(optimal_repairs(kb, kind)?.take(2).count() == 1)
}

/// Runs the greedy procedure along every choice of a maximal unconsidered fact,
/// reporting each distinct result until `emit` returns false.
fn completion_search(kb: &ValidatedKb, emit: &mut dyn FnMut(Repair) -> bool) {
    let order = kb.ordered_active();
    let mut seen: HashSet<(FactSet, FactSet)> = HashSet::new();
    let mut results: BTreeSet<FactSet> = BTreeSet::new();
    let mut stack = vec![(FactSet::new(), FactSet::new())];
    while let Some((considered, current)) = stack.pop() {
        if !seen.insert((considered.clone(), current.clone())) {
            continue;
        }
        let open: Vec<FactId> = order.iter().copied().filter(|f| !considered.contains(f)).collect();
        if open.is_empty() {
            if results.insert(current.clone()) && !emit(current) {
                return;
            }
            continue;
        }
        let maximal: Vec<FactId> =
            open.iter().copied().filter(|&a| !open.iter().any(|&b| kb.prefers(b, a))).collect();
        for &a in maximal.iter().rev() {
            let mut next_considered = considered.clone();
            next_considered.insert(a);
            let mut next = current.clone();
            if kb.conflicts().can_add(&current, a) {
                next.insert(a);
            }
            stack.push((next_considered, next));
        }
    }
}
