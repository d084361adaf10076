//! Inconsistency-tolerant semantics: AR, IAR and brave over optimal repairs, grounded,
//! Elect and the partial-preorder preferred repair.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::argumentation::{self, kb_to_psetaf};
use crate::dllite::{self, Bcq};
use crate::error::{Error, Result};
use crate::kb::{FactId, FactSet, PriorityRelation, TBox, ValidatedKb};
use crate::repairs::{enumerate_optimal, RepairKind};

/// How query answers over the repairs are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Entailed by every repair.
    Ar,
    /// Entailed by the intersection of the repairs.
    Iar,
    /// Entailed by some repair.
    Brave,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ar => "AR",
            Mode::Iar => "IAR",
            Mode::Brave => "brave",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ar" => Ok(Mode::Ar),
            "iar" => Ok(Mode::Iar),
            "brave" => Ok(Mode::Brave),
            _ => Err(Error::UnknownName { what: "mode", value: s.to_owned() }),
        }
    }
}

/// Whether a consistent subset entails the query.
pub fn holds_in(kb: &ValidatedKb, subset: &FactSet, q: &Bcq) -> Result<bool> {
    match kb.closed_tbox() {
        Some(closed) => dllite::entails_bcq(closed, kb.abox(), subset, q),
        None => {
            if !kb.conflicts().is_consistent(subset) {
                return Err(Error::InconsistentInput);
            }
            let empty = dllite::close_tbox(&TBox::default());
            dllite::entails_bcq(&empty, kb.abox(), subset, q)
        }
    }
}

/// Intersection of a non-empty family of sets.
pub fn intersection(sets: &[FactSet]) -> FactSet {
    let mut iter = sets.iter();
    let Some(first) = iter.next() else { return FactSet::new() };
    iter.fold(first.clone(), |acc, s| acc.intersection(s).copied().collect())
}

/// Query entailment under the given kind of optimal repairs and mode.
pub fn entails(kb: &ValidatedKb, q: &Bcq, kind: RepairKind, mode: Mode) -> Result<bool> {
    let repairs = enumerate_optimal(kb, kind)?;
    match mode {
        Mode::Iar => holds_in(kb, &intersection(&repairs), q),
        Mode::Ar => {
            for r in &repairs {
                if !holds_in(kb, r, q)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Mode::Brave => {
            for r in &repairs {
                if holds_in(kb, r, q)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// The grounded extension of the preference-reduced framework, as facts.
pub fn grounded_set(kb: &ValidatedKb) -> FactSet {
    let fw = kb_to_psetaf(kb);
    fw.facts_of(&argumentation::grounded(&fw.psetaf.reduce()))
}

/// `Γ^d(∅)` of the preference-reduced framework, as facts.
pub fn grounded_approx_set(kb: &ValidatedKb, d: usize) -> FactSet {
    let fw = kb_to_psetaf(kb);
    fw.facts_of(&argumentation::grounded_approx(&fw.psetaf.reduce(), d))
}

pub fn grounded_entails(kb: &ValidatedKb, q: &Bcq) -> Result<bool> {
    holds_in(kb, &grounded_set(kb), q)
}

pub fn grounded_approx_entails(kb: &ValidatedKb, q: &Bcq, d: usize) -> Result<bool> {
    holds_in(kb, &grounded_approx_set(kb, d), q)
}

/// Facts that beat some member of every conflict they belong to.
pub fn elect(kb: &ValidatedKb) -> FactSet {
    kb.active()
        .iter()
        .copied()
        .filter(|&a| kb.conflicts().edges_with(a).all(|c| c.iter().any(|&b| kb.prefers(a, b))))
        .collect()
}

pub fn elect_entails(kb: &ValidatedKb, q: &Bcq) -> Result<bool> {
    holds_in(kb, &elect(kb), q)
}

/// A reflexive and transitive relation over the facts of an ABox; `(a, b)` means `a ⊵ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPreorder {
    size: usize,
    pairs: BTreeSet<(FactId, FactId)>,
}

impl PartialPreorder {
    /// Checks reflexivity over `size` facts and transitivity.
    pub fn new(size: usize, pairs: impl IntoIterator<Item = (FactId, FactId)>) -> Result<Self> {
        let pairs: BTreeSet<(FactId, FactId)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| a.index() >= size || b.index() >= size) {
            return Err(Error::NotAPreorder(format!("pair ({}, {}) is out of range", a.index(), b.index())));
        }
        if let Some(i) = (0..size).map(FactId::from_index).find(|&f| !pairs.contains(&(f, f))) {
            return Err(Error::NotAPreorder(format!("not reflexive at #{}", i.index())));
        }
        for &(a, b) in &pairs {
            for &(c, d) in pairs.range((b, FactId::from_index(0))..) {
                if c != b {
                    break;
                }
                if !pairs.contains(&(a, d)) {
                    return Err(Error::NotAPreorder(format!(
                        "not transitive: #{} ⊵ #{} ⊵ #{}",
                        a.index(),
                        b.index(),
                        d.index()
                    )));
                }
            }
        }
        Ok(PartialPreorder { size, pairs })
    }

    /// The smallest preorder containing the pairs.
    pub fn generated_by(size: usize, pairs: impl IntoIterator<Item = (FactId, FactId)>) -> Result<Self> {
        let mut rel: BTreeSet<(FactId, FactId)> = pairs.into_iter().collect();
        rel.extend((0..size).map(|i| (FactId::from_index(i), FactId::from_index(i))));
        loop {
            let extra: Vec<(FactId, FactId)> = rel
                .iter()
                .flat_map(|&(a, b)| rel.range((b, FactId::from_index(0))..).take_while(move |p| p.0 == b).map(move |&(_, d)| (a, d)))
                .filter(|p| !rel.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            rel.extend(extra);
        }
        PartialPreorder::new(size, rel)
    }

    pub fn geq(&self, a: FactId, b: FactId) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// `a ⊵ b` and not `b ⊵ a`.
    pub fn strictly(&self, a: FactId, b: FactId) -> bool {
        self.geq(a, b) && !self.geq(b, a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pairs(&self) -> impl Iterator<Item = (FactId, FactId)> + '_ {
        self.pairs.iter().copied()
    }
}

fn strict_on_conflicts(kb: &ValidatedKb, holds: impl Fn(FactId, FactId) -> bool) -> PriorityRelation {
    let mut rel = PriorityRelation::default();
    for (a, b) in kb.conflicts().pairs() {
        if holds(a, b) {
            rel.insert(a, b);
        } else if holds(b, a) {
            rel.insert(b, a);
        }
    }
    rel
}

/// Intersection of the completion-optimal repairs for the strict part of the preorder,
/// restricted to conflicting pairs. The knowledge base's own priority is ignored.
pub fn partial_pr(kb: &ValidatedKb, preorder: &PartialPreorder) -> Result<FactSet> {
    check_size(kb, preorder)?;
    let derived = kb.with_priority(strict_on_conflicts(kb, |a, b| preorder.strictly(a, b)))?;
    Ok(intersection(&enumerate_optimal(&derived, RepairKind::Completion)?))
}

/// Most facts the literal definition accepts.
pub const LITERAL_PARTIAL_PR_CAP: usize = 8;

/// Intersection over all total extensions of the preorder of the intersected optimal repairs.
pub fn partial_pr_literal(kb: &ValidatedKb, preorder: &PartialPreorder) -> Result<FactSet> {
    check_size(kb, preorder)?;
    let facts: Vec<FactId> = kb.ordered_active();
    if facts.len() > LITERAL_PARTIAL_PR_CAP {
        return Err(Error::TooLarge { what: "ABox", size: facts.len(), limit: LITERAL_PARTIAL_PR_CAP });
    }
    let mut result: Option<FactSet> = None;
    let mut levels = BTreeMap::new();
    let remaining: BTreeSet<FactId> = facts.iter().copied().collect();
    let mut failure = None;
    total_extensions(preorder, remaining, 0, &mut levels, &mut |levels| {
        let level = |f: FactId| levels[&f];
        let derived = match kb.with_priority(strict_on_conflicts(kb, |a, b| level(a) < level(b))) {
            Ok(d) => d,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        match enumerate_optimal(&derived, RepairKind::Pareto) {
            Ok(reps) => {
                let ipr = intersection(&reps);
                result = Some(match result.take() {
                    None => ipr,
                    Some(r) => r.intersection(&ipr).copied().collect(),
                });
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(result.unwrap_or_default())
}

fn check_size(kb: &ValidatedKb, preorder: &PartialPreorder) -> Result<()> {
    if preorder.size() != kb.abox().len() {
        return Err(Error::NotAPreorder(format!(
            "preorder covers {} facts but the ABox has {}",
            preorder.size(),
            kb.abox().len()
        )));
    }
    Ok(())
}

/// Ordered partitions of `remaining` into levels (0 = most preferred) that respect the preorder.
fn total_extensions(
    pre: &PartialPreorder,
    remaining: BTreeSet<FactId>,
    depth: usize,
    levels: &mut BTreeMap<FactId, usize>,
    visit: &mut dyn FnMut(&BTreeMap<FactId, usize>),
) {
    if remaining.is_empty() {
        visit(levels);
        return;
    }
    let items: Vec<FactId> = remaining.iter().copied().collect();
    for mask in 1u32..(1 << items.len()) {
        let top: Vec<FactId> = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect();
        let rest: BTreeSet<FactId> = (0..items.len()).filter(|i| mask >> i & 1 == 0).map(|i| items[i]).collect();
        // nothing left below may be ⊵ a top fact, and top facts may not be strictly ordered
        let ok = top.iter().all(|&t| rest.iter().all(|&r| !pre.geq(r, t)))
            && top.iter().all(|&a| top.iter().all(|&b| !pre.strictly(a, b)));
        if !ok {
            continue;
        }
        for &t in &top {
            levels.insert(t, depth);
        }
        total_extensions(pre, rest, depth + 1, levels, visit);
        for t in &top {
            levels.remove(t);
        }
    }
}
