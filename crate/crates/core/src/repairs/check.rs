use super::{dominated_by, Flavor, ImprovementWitness, RepairCheck, RepairKind, Refutation};
use crate::error::{Error, Result};
use crate::kb::{FactId, FactSet, ValidatedKb};

/// Decides whether `candidate` is an optimal repair of the given kind.
///
/// Negative Pareto and global answers carry an improvement; negative completion answers
/// carry the repair the candidate-favouring greedy run ends in.
pub fn check_repair(kb: &ValidatedKb, candidate: &FactSet, kind: RepairKind) -> Result<RepairCheck> {
    if let Some(f) = candidate.iter().find(|f| f.index() >= kb.abox().len()) {
        return Err(Error::NotASubset(format!("#{}", f.index())));
    }
    if let Some(r) = repair_refutation(kb, candidate) {
        return Ok(RepairCheck { refutation: Some(r) });
    }
    let refutation = match kind {
        RepairKind::Subset => None,
        RepairKind::Pareto => pareto_improvement(kb, candidate).map(Refutation::Improvement),
        RepairKind::Global => {
            kb.limits().check_facts(kb.active().len() - candidate.len())?;
            global_improvement(kb, candidate).map(Refutation::Improvement)
        }
        RepairKind::Completion => {
            let greedy = favouring_greedy(kb, candidate);
            (greedy != *candidate).then_some(Refutation::GreedyDiverged(greedy))
        }
    };
    Ok(RepairCheck { refutation })
}

fn repair_refutation(kb: &ValidatedKb, candidate: &FactSet) -> Option<Refutation> {
    let conflicts = kb.conflicts();
    if let Some(&f) = candidate.intersection(conflicts.self_contradictory()).next() {
        return Some(Refutation::Inconsistent(FactSet::from([f])));
    }
    if let Some(e) = conflicts.edges().iter().find(|e| e.is_subset(candidate)) {
        return Some(Refutation::Inconsistent(e.clone()));
    }
    kb.ordered_active()
        .into_iter()
        .find(|f| !candidate.contains(f) && conflicts.can_add(candidate, *f))
        .map(Refutation::NotMaximal)
}

/// Adds each outside fact in turn and drops what it beats.
fn pareto_improvement(kb: &ValidatedKb, candidate: &FactSet) -> Option<ImprovementWitness> {
    for b in kb.ordered_active() {
        if candidate.contains(&b) {
            continue;
        }
        let leaving: FactSet = candidate.iter().copied().filter(|&a| kb.prefers(b, a)).collect();
        let mut improved: FactSet = candidate.difference(&leaving).copied().collect();
        improved.insert(b);
        if kb.conflicts().is_consistent(&improved) {
            return Some(ImprovementWitness { improved, entering: FactSet::from([b]), leaving, flavor: Flavor::Pareto });
        }
    }
    None
}

/// Searches entering sets by increasing size; for a fixed entering set the best choice
/// removes every candidate fact it dominates.
fn global_improvement(kb: &ValidatedKb, candidate: &FactSet) -> Option<ImprovementWitness> {
    let outside: Vec<FactId> = kb.ordered_active().into_iter().filter(|f| !candidate.contains(f)).collect();
    for size in 1..=outside.len() {
        let mut entering = FactSet::new();
        if let Some(w) = subsets_of_size(kb, candidate, &outside, 0, size, &mut entering) {
            return Some(w);
        }
    }
    None
}

fn subsets_of_size(
    kb: &ValidatedKb,
    candidate: &FactSet,
    outside: &[FactId],
    from: usize,
    size: usize,
    entering: &mut FactSet,
) -> Option<ImprovementWitness> {
    if entering.len() == size {
        let leaving: FactSet = candidate.iter().copied().filter(|&a| dominated_by(kb, entering, a)).collect();
        let improved: FactSet = candidate.difference(&leaving).chain(entering.iter()).copied().collect();
        return kb.conflicts().is_consistent(&improved).then(|| ImprovementWitness {
            improved,
            entering: entering.clone(),
            leaving,
            flavor: Flavor::Global,
        });
    }
    for i in from..outside.len() {
        if outside.len() - i < size - entering.len() {
            break;
        }
        let f = outside[i];
        if !kb.conflicts().can_add(entering, f) {
            continue;
        }
        entering.insert(f);
        let found = subsets_of_size(kb, candidate, outside, i + 1, size, entering);
        entering.remove(&f);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Greedy run that picks a maximal unconsidered fact from the candidate when one exists,
/// otherwise one that can no longer be added.
fn favouring_greedy(kb: &ValidatedKb, candidate: &FactSet) -> FactSet {
    let mut open = kb.ordered_active();
    let mut current = FactSet::new();
    while !open.is_empty() {
        let maximal: Vec<usize> =
            (0..open.len()).filter(|&i| !open.iter().any(|&b| kb.prefers(b, open[i]))).collect();
        let pick = maximal
            .iter()
            .copied()
            .find(|&i| candidate.contains(&open[i]))
            .or_else(|| maximal.iter().copied().find(|&i| !kb.conflicts().can_add(&current, open[i])))
            .unwrap_or(maximal[0]);
        let a = open.remove(pick);
        if kb.conflicts().can_add(&current, a) {
            current.insert(a);
        }
    }
    current
}
