use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ClosedTBox;
use crate::conflict::ConflictHypergraph;
use crate::kb::{ABox, BasicConcept, FactAtom, FactId, FactSet, RoleExpr};

/// An atom of a pattern; terms are variable indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternAtom {
    pub predicate: String,
    pub terms: Vec<usize>,
}

/// A Boolean conjunctive query over variables only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    atoms: Vec<PatternAtom>,
}

impl Pattern {
    pub fn atoms(&self) -> &[PatternAtom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Number of distinct variables.
    pub fn var_count(&self) -> usize {
        self.atoms.iter().flat_map(|a| a.terms.iter()).max().map_or(0, |m| m + 1)
    }

    /// All ordered matches into `facts`, as the fact matched by each atom.
    pub fn matches<'a>(&self, facts: &'a [(FactId, &'a FactAtom)]) -> Vec<Vec<FactId>> {
        let mut out = Vec::new();
        let mut binding: Vec<Option<&str>> = vec![None; self.var_count()];
        let mut chosen = Vec::with_capacity(self.atoms.len());
        self.search(0, facts, &mut binding, &mut chosen, &mut |m| {
            out.push(m.to_vec());
            true
        });
        out
    }

    /// Whether some match into `facts` exists.
    pub fn has_match<'a>(&self, facts: &'a [(FactId, &'a FactAtom)]) -> bool {
        let mut found = false;
        let mut binding: Vec<Option<&str>> = vec![None; self.var_count()];
        let mut chosen = Vec::with_capacity(self.atoms.len());
        self.search(0, facts, &mut binding, &mut chosen, &mut |_| {
            found = true;
            false
        });
        found
    }

    fn search<'a>(
        &self,
        i: usize,
        facts: &'a [(FactId, &'a FactAtom)],
        binding: &mut Vec<Option<&'a str>>,
        chosen: &mut Vec<FactId>,
        emit: &mut dyn FnMut(&[FactId]) -> bool,
    ) -> bool {
        let Some(atom) = self.atoms.get(i) else {
            return emit(chosen);
        };
        for &(id, fact) in facts {
            if fact.predicate != atom.predicate {
                continue;
            }
            let args = fact.args.as_slice();
            if args.len() != atom.terms.len() {
                continue;
            }
            let saved = binding.clone();
            let ok = atom.terms.iter().zip(&args).all(|(&v, &c)| match binding[v] {
                Some(b) => b == c,
                None => {
                    binding[v] = Some(c);
                    true
                }
            });
            if ok {
                chosen.push(id);
                let go_on = self.search(i + 1, facts, binding, chosen, emit);
                chosen.pop();
                if !go_on {
                    *binding = saved;
                    return false;
                }
            }
            *binding = saved;
        }
        true
    }

    /// Renames variables in order of first occurrence, after sorting atoms canonically.
    fn canonical(atoms: Vec<PatternAtom>) -> Pattern {
        let mut atoms: Vec<PatternAtom> = atoms.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if atoms.len() <= 6 {
            let mut best: Option<Vec<PatternAtom>> = None;
            permute(&mut atoms, 0, &mut |order| {
                let mut renamed = rename(order);
                renamed.sort();
                if best.as_ref().map_or(true, |b| &renamed < b) {
                    best = Some(renamed);
                }
            });
            if let Some(b) = best {
                return Pattern { atoms: b };
            }
        }
        let mut renamed = rename(&atoms);
        renamed.sort();
        Pattern { atoms: renamed }
    }
}

fn rename(atoms: &[PatternAtom]) -> Vec<PatternAtom> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    atoms
        .iter()
        .map(|a| PatternAtom {
            predicate: a.predicate.clone(),
            terms: a
                .terms
                .iter()
                .map(|v| {
                    let n = map.len();
                    *map.entry(*v).or_insert(n)
                })
                .collect(),
        })
        .collect()
}

fn permute<T: Clone>(items: &mut Vec<T>, k: usize, f: &mut dyn FnMut(&[T])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Every ordering of the atoms of `p`, without duplicates.
pub fn orderings(p: &Pattern) -> Vec<Vec<PatternAtom>> {
    let mut out = BTreeSet::new();
    let mut atoms = p.atoms.clone();
    permute(&mut atoms, 0, &mut |o| {
        out.insert(o.to_vec());
    });
    out.into_iter().collect()
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let terms: Vec<String> = a.terms.iter().map(|t| format!("x{t}")).collect();
            write!(f, "{}({})", a.predicate, terms.join(", "))?;
        }
        Ok(())
    }
}

fn role_atom(r: &RoleExpr, s: usize, t: usize) -> PatternAtom {
    let terms = if r.inverse { vec![t, s] } else { vec![s, t] };
    PatternAtom { predicate: r.name.clone(), terms }
}

pub(super) fn unsat_patterns(closed: &ClosedTBox) -> Vec<Pattern> {
    let mut seeds: BTreeSet<Pattern> = BTreeSet::new();
    for c in closed.clash_sets() {
        let mut atoms = Vec::new();
        let mut next = 1;
        for b in c {
            match b {
                BasicConcept::Name(a) => atoms.push(PatternAtom { predicate: a.clone(), terms: vec![0] }),
                BasicConcept::Exists(r) => {
                    atoms.push(role_atom(r, 0, next));
                    next += 1;
                }
            }
        }
        seeds.insert(Pattern::canonical(atoms));
    }
    for (s, q) in closed.role_disjoint_pairs() {
        seeds.insert(Pattern::canonical(vec![role_atom(s, 0, 1), role_atom(q, 0, 1)]));
    }
    let mut all = seeds.clone();
    let mut queue: Vec<Pattern> = seeds.into_iter().collect();
    while let Some(p) = queue.pop() {
        for i in 0..p.atoms.len() {
            for j in i + 1..p.atoms.len() {
                let (a, b) = (&p.atoms[i], &p.atoms[j]);
                if a.predicate != b.predicate || a.terms.len() != b.terms.len() {
                    continue;
                }
                let merged = Pattern::canonical(unify(&p.atoms, &a.terms, &b.terms));
                if all.insert(merged.clone()) {
                    queue.push(merged);
                }
            }
        }
    }
    all.into_iter().collect()
}

fn unify(atoms: &[PatternAtom], x: &[usize], y: &[usize]) -> Vec<PatternAtom> {
    let n = atoms.iter().flat_map(|a| a.terms.iter()).max().map_or(0, |m| m + 1);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        if p[v] != v {
            let r = find(p, p[v]);
            p[v] = r;
        }
        p[v]
    }
    for (&s, &t) in x.iter().zip(y) {
        let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
        if rs != rt {
            parent[rs.max(rt)] = rs.min(rt);
        }
    }
    atoms
        .iter()
        .map(|a| PatternAtom {
            predicate: a.predicate.clone(),
            terms: a.terms.iter().map(|&v| find(&mut parent, v)).collect(),
        })
        .collect()
}

pub(super) fn atoms_of<'a>(abox: &'a ABox, subset: Option<&FactSet>) -> Vec<(FactId, &'a FactAtom)> {
    abox.iter()
        .filter(|(id, _)| subset.map_or(true, |s| s.contains(id)))
        .filter_map(|(id, a)| a.atom.as_ref().map(|atom| (id, atom)))
        .collect()
}

/// Whether `subset` of the ABox is consistent with the TBox.
pub fn is_consistent(closed: &ClosedTBox, abox: &ABox, subset: &FactSet) -> bool {
    let facts = atoms_of(abox, Some(subset));
    !closed.patterns().iter().any(|p| p.has_match(&facts))
}

/// The minimal inconsistent subsets of the ABox.
pub fn conflicts(closed: &ClosedTBox, abox: &ABox) -> ConflictHypergraph {
    let facts = atoms_of(abox, None);
    let mut images: BTreeSet<FactSet> = BTreeSet::new();
    for p in closed.patterns() {
        for m in p.matches(&facts) {
            images.insert(m.into_iter().collect());
        }
    }
    ConflictHypergraph::from_inconsistent_sets(images)
}
