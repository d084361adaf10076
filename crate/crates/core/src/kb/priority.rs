use std::collections::{BTreeMap, BTreeSet};

use super::{FactId, PriorityRelation, ValidatedKb};

/// Transitive closure of a relation.
pub fn transitive_closure(rel: &PriorityRelation) -> BTreeSet<(FactId, FactId)> {
    let mut succ: BTreeMap<FactId, BTreeSet<FactId>> = BTreeMap::new();
    for (a, b) in rel.iter() {
        succ.entry(a).or_default().insert(b);
    }
    let mut out = BTreeSet::new();
    for &start in succ.keys() {
        let mut stack: Vec<FactId> = succ[&start].iter().copied().collect();
        let mut seen = BTreeSet::new();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                out.insert((start, v));
                if let Some(next) = succ.get(&v) {
                    stack.extend(next.iter().copied());
                }
            }
        }
    }
    out
}

/// Whether every chain `a > ... > b` between two conflicting facts has `a > b`.
pub fn is_transitive_priority(kb: &ValidatedKb) -> bool {
    transitive_closure(kb.priority())
        .into_iter()
        .all(|(a, b)| !kb.conflicts().co_occur(a, b) || kb.prefers(a, b))
}

/// A score per active fact such that for conflicting facts `a > b` iff `score(a) > score(b)`.
///
/// Scores start at 1 for facts that are not preferred to anything.
pub fn score_structured(kb: &ValidatedKb) -> Option<BTreeMap<FactId, u32>> {
    let facts: Vec<FactId> = kb.active().iter().copied().collect();
    let pos: BTreeMap<FactId, usize> = facts.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut parent: Vec<usize> = (0..facts.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let pairs = kb.conflicts().pairs();
    for &(a, b) in &pairs {
        if !kb.priority().relates(a, b) {
            let (ra, rb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
            parent[ra] = rb;
        }
    }
    let mut succ: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (a, b) in kb.priority().iter() {
        let (ca, cb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
        if ca == cb {
            return None;
        }
        succ.entry(ca).or_default().insert(cb);
    }
    // longest path to a sink over classes; a cycle means no score exists
    let mut level: BTreeMap<usize, u32> = BTreeMap::new();
    let mut on_path = BTreeSet::new();
    fn depth(
        c: usize,
        succ: &BTreeMap<usize, BTreeSet<usize>>,
        level: &mut BTreeMap<usize, u32>,
        on_path: &mut BTreeSet<usize>,
    ) -> Option<u32> {
        if let Some(&l) = level.get(&c) {
            return Some(l);
        }
        if !on_path.insert(c) {
            return None;
        }
        let mut best = 0;
        for &d in succ.get(&c).into_iter().flatten() {
            best = best.max(depth(d, succ, level, on_path)?);
        }
        on_path.remove(&c);
        level.insert(c, best + 1);
        Some(best + 1)
    }
    let mut scores = BTreeMap::new();
    for (i, &f) in facts.iter().enumerate() {
        let c = find(&mut parent, i);
        scores.insert(f, depth(c, &succ, &mut level, &mut on_path)?);
    }
    Some(scores)
}

/// Acyclic total orientations of all conflicting pairs that extend the priority, at most `cap`.
///
/// Pairs are oriented in identifier order, trying the smaller identifier as the winner first.
pub fn completions(kb: &ValidatedKb, cap: usize) -> Vec<PriorityRelation> {
    let mut open: Vec<(FactId, FactId)> = kb
        .conflicts()
        .pairs()
        .into_iter()
        .filter(|&(a, b)| !kb.priority().relates(a, b))
        .map(|(a, b)| if kb.name(a) <= kb.name(b) { (a, b) } else { (b, a) })
        .collect();
    open.sort_by(|x, y| (kb.name(x.0), kb.name(x.1)).cmp(&(kb.name(y.0), kb.name(y.1))));
    let mut succ: BTreeMap<FactId, Vec<FactId>> = BTreeMap::new();
    for (a, b) in kb.priority().iter() {
        succ.entry(a).or_default().push(b);
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(&open, 0, &mut succ, &mut chosen, kb.priority(), cap, &mut out);
    out
}

fn reaches(succ: &BTreeMap<FactId, Vec<FactId>>, from: FactId, to: FactId) -> bool {
    let mut stack = vec![from];
    let mut seen = BTreeSet::new();
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        if seen.insert(v) {
            stack.extend(succ.get(&v).into_iter().flatten().copied());
        }
    }
    false
}

fn extend(
    open: &[(FactId, FactId)],
    i: usize,
    succ: &mut BTreeMap<FactId, Vec<FactId>>,
    chosen: &mut Vec<(FactId, FactId)>,
    base: &PriorityRelation,
    cap: usize,
    out: &mut Vec<PriorityRelation>,
) {
    if out.len() >= cap {
        return;
    }
    let Some(&(a, b)) = open.get(i) else {
        out.push(PriorityRelation::new(base.iter().chain(chosen.iter().copied())));
        return;
    };
    for (hi, lo) in [(a, b), (b, a)] {
        if reaches(succ, lo, hi) {
            continue;
        }
        succ.entry(hi).or_default().push(lo);
        chosen.push((hi, lo));
        extend(open, i + 1, succ, chosen, base, cap, out);
        chosen.pop();
        succ.get_mut(&hi).expect("just inserted").pop();
    }
}
