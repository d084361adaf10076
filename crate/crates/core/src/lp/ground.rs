use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Atom, GroundAtom, Program, Term};
use crate::error::{Error, Result};

/// A ground rule over interned atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head: u32,
    pub pos: Vec<u32>,
    pub neg: Vec<u32>,
}

/// The relevant part of the ground instantiation of a program.
#[derive(Debug, Clone, Default)]
pub struct GroundProgram {
    atoms: Vec<GroundAtom>,
    index: HashMap<GroundAtom, u32>,
    pub rules: Vec<GroundRule>,
}

impl GroundProgram {
    fn intern(&mut self, atom: GroundAtom) -> u32 {
        if let Some(&i) = self.index.get(&atom) {
            return i;
        }
        let i = u32::try_from(self.atoms.len()).expect("atom count overflow");
        self.index.insert(atom.clone(), i);
        self.atoms.push(atom);
        i
    }

    pub fn atom(&self, i: u32) -> &GroundAtom {
        &self.atoms[i as usize]
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn lookup(&self, atom: &GroundAtom) -> Option<u32> {
        self.index.get(atom).copied()
    }

    /// Least model of the rules whose negative body avoids `blocked`, ignoring negation.
    pub(crate) fn least_model(&self, rules: impl Iterator<Item = usize>, blocked: &[bool]) -> Vec<bool> {
        let n = self.atoms.len();
        let mut truth = vec![false; n];
        let mut missing: Vec<usize> = Vec::new();
        let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut active = Vec::new();
        let mut queue = Vec::new();
        for r in rules {
            let rule = &self.rules[r];
            if rule.neg.iter().any(|&a| blocked[a as usize]) {
                continue;
            }
            let slot = active.len();
            active.push(r);
            let mut distinct: Vec<u32> = rule.pos.clone();
            distinct.sort_unstable();
            distinct.dedup();
            missing.push(distinct.len());
            for &a in &distinct {
                watchers[a as usize].push(slot);
            }
            if distinct.is_empty() {
                queue.push(rule.head);
            }
        }
        while let Some(a) = queue.pop() {
            if truth[a as usize] {
                continue;
            }
            truth[a as usize] = true;
            for &slot in &watchers[a as usize] {
                missing[slot] -= 1;
                if missing[slot] == 0 {
                    queue.push(self.rules[active[slot]].head);
                }
            }
        }
        truth
    }
}

struct Facts {
    by_pred: HashMap<String, Vec<Vec<String>>>,
    seen: HashSet<GroundAtom>,
}

impl Facts {
    fn insert(&mut self, a: GroundAtom) -> bool {
        if self.seen.contains(&a) {
            return false;
        }
        self.by_pred.entry(a.predicate.clone()).or_default().push(a.args.clone());
        self.seen.insert(a);
        true
    }
}

fn instantiate(atom: &Atom, binding: &HashMap<&str, String>) -> Option<GroundAtom> {
    let args = atom
        .terms
        .iter()
        .map(|t| match t {
            Term::Const(c) => Some(c.clone()),
            Term::Var(v) => binding.get(v.as_str()).cloned(),
        })
        .collect::<Option<Vec<String>>>()?;
    Some(GroundAtom { predicate: atom.predicate.clone(), args })
}

/// Enumerates bindings of the positive body against the facts.
fn matches<'r>(
    body: &'r [Atom],
    facts: &Facts,
    binding: &mut HashMap<&'r str, String>,
    emit: &mut dyn FnMut(&HashMap<&'r str, String>),
) {
    let Some((atom, rest)) = body.split_first() else {
        emit(binding);
        return;
    };
    let Some(rows) = facts.by_pred.get(&atom.predicate) else { return };
    for row in rows {
        if row.len() != atom.terms.len() {
            continue;
        }
        let mut added: Vec<&str> = Vec::new();
        let mut ok = true;
        for (t, val) in atom.terms.iter().zip(row) {
            match t {
                Term::Const(c) => {
                    if c != val {
                        ok = false;
                        break;
                    }
                }
                Term::Var(v) => match binding.get(v.as_str()) {
                    Some(b) if b != val => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        binding.insert(v.as_str(), val.clone());
                        added.push(v.as_str());
                    }
                },
            }
        }
        if ok {
            matches(rest, facts, binding, emit);
        }
        for v in added {
            binding.remove(v);
        }
    }
}

/// Grounds the instances whose positive body holds in the least model of the program
/// with negation dropped; every other instance has a false body in all models.
pub fn ground(program: &Program, max_atoms: usize) -> Result<GroundProgram> {
    let mut facts = Facts { by_pred: HashMap::new(), seen: HashSet::new() };
    loop {
        let mut new = Vec::new();
        for rule in program.rules() {
            let mut binding = HashMap::new();
            matches(&rule.pos, &facts, &mut binding, &mut |b| {
                if let Some(h) = instantiate(&rule.head, b) {
                    if !facts.seen.contains(&h) {
                        new.push(h);
                    }
                }
            });
        }
        let mut grew = false;
        for a in new {
            grew |= facts.insert(a);
        }
        if facts.seen.len() > max_atoms {
            return Err(Error::GroundingBudget(max_atoms));
        }
        if !grew {
            break;
        }
    }
    let constants: BTreeSet<String> = program
        .rules()
        .iter()
        .flat_map(|r| std::iter::once(&r.head).chain(&r.pos).chain(&r.neg))
        .flat_map(|a| a.terms.iter())
        .filter_map(|t| match t {
            Term::Const(c) => Some(c.clone()),
            Term::Var(_) => None,
        })
        .collect();
    let constants: Vec<String> = constants.into_iter().collect();

    let mut gp = GroundProgram::default();
    let mut seen_rules = HashSet::new();
    for rule in program.rules() {
        let mut instances = Vec::new();
        let mut binding = HashMap::new();
        matches(&rule.pos, &facts, &mut binding, &mut |b| instances.push(b.clone()));
        for b in instances {
            let free: Vec<&str> = {
                let mut v: Vec<&str> =
                    rule.neg.iter().flat_map(|a| a.vars()).filter(|v| !b.contains_key(v)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let mut extended = vec![b];
            for v in free {
                extended = extended
                    .into_iter()
                    .flat_map(|b| {
                        constants.iter().map(move |c| {
                            let mut b = b.clone();
                            b.insert(v, c.clone());
                            b
                        })
                    })
                    .collect();
            }
            for b in extended {
                let head = gp.intern(instantiate(&rule.head, &b).expect("safe rule"));
                let pos = rule.pos.iter().map(|a| gp.intern(instantiate(a, &b).expect("bound"))).collect();
                let neg = rule.neg.iter().map(|a| gp.intern(instantiate(a, &b).expect("bound"))).collect();
                let gr = GroundRule { head, pos, neg };
                if seen_rules.insert(gr.clone()) {
                    gp.rules.push(gr);
                }
            }
            if gp.atoms.len() > max_atoms {
                return Err(Error::GroundingBudget(max_atoms));
            }
        }
    }
    Ok(gp)
}
