use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::pattern::atoms_of;
use super::ClosedTBox;
use crate::error::{Error, Result};
use crate::kb::{ABox, Args, BasicConcept, FactSet, RoleExpr};

/// A query term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Ind(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Ind(i) => write!(f, "\"{i}\""),
        }
    }
}

/// A concept or role atom of a query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QueryAtom {
    pub predicate: String,
    pub terms: Vec<Term>,
}

impl fmt::Display for QueryAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.predicate, terms.join(", "))
    }
}

/// A Boolean conjunctive query: all variables are existentially quantified.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bcq {
    pub atoms: Vec<QueryAtom>,
}

impl Bcq {
    pub fn new(atoms: Vec<QueryAtom>) -> Self {
        Bcq { atoms }
    }

    /// A single-atom query.
    pub fn atom(predicate: &str, terms: Vec<Term>) -> Self {
        Bcq { atoms: vec![QueryAtom { predicate: predicate.to_owned(), terms }] }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl fmt::Display for Bcq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<String> = self.atoms.iter().map(ToString::to_string).collect();
        f.write_str(&atoms.join(", "))
    }
}

/// A conjunctive query with answer variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjunctiveQuery {
    pub name: String,
    pub answer_vars: Vec<String>,
    pub body: Bcq,
}

impl ConjunctiveQuery {
    pub fn is_boolean(&self) -> bool {
        self.answer_vars.is_empty()
    }

    /// Replaces the answer variables by individuals.
    pub fn bind(&self, individuals: &[String]) -> Bcq {
        let map: BTreeMap<&str, &str> =
            self.answer_vars.iter().map(String::as_str).zip(individuals.iter().map(String::as_str)).collect();
        Bcq {
            atoms: self
                .body
                .atoms
                .iter()
                .map(|a| QueryAtom {
                    predicate: a.predicate.clone(),
                    terms: a
                        .terms
                        .iter()
                        .map(|t| match t {
                            Term::Var(v) => map.get(v.as_str()).map_or(t.clone(), |i| Term::Ind((*i).to_owned())),
                            Term::Ind(_) => t.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for ConjunctiveQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) :- {}", self.name, self.answer_vars.join(", "), self.body)
    }
}

/// A finite prefix of the canonical model of a consistent KB.
#[derive(Debug, Clone)]
pub struct Chase {
    names: Vec<String>,
    named: usize,
    types: Vec<BTreeSet<BasicConcept>>,
    roles: BTreeSet<(String, usize, usize)>,
}

impl Chase {
    /// Builds the chase of `subset` up to `depth` anonymous levels.
    pub fn build(closed: &ClosedTBox, abox: &ABox, subset: &FactSet, depth: usize) -> Chase {
        let mut chase = Chase { names: Vec::new(), named: 0, types: Vec::new(), roles: BTreeSet::new() };
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut initial: Vec<BTreeSet<BasicConcept>> = Vec::new();
        let mut elem = |name: &str, chase: &mut Chase, initial: &mut Vec<BTreeSet<BasicConcept>>| -> usize {
            *index.entry(name.to_owned()).or_insert_with(|| {
                chase.names.push(name.to_owned());
                initial.push(BTreeSet::new());
                chase.names.len() - 1
            })
        };
        let mut edges = Vec::new();
        for (_, atom) in atoms_of(abox, Some(subset)) {
            match &atom.args {
                Args::Unary(a) => {
                    let e = elem(a, &mut chase, &mut initial);
                    initial[e].insert(BasicConcept::name(atom.predicate.as_str()));
                }
                Args::Binary(a, b) => {
                    let (x, y) = (elem(a, &mut chase, &mut initial), elem(b, &mut chase, &mut initial));
                    let r = RoleExpr::named(atom.predicate.as_str());
                    initial[x].insert(BasicConcept::Exists(r.clone()));
                    initial[y].insert(BasicConcept::Exists(r.inv()));
                    edges.push((r, x, y));
                }
            }
        }
        chase.named = chase.names.len();
        chase.types = initial.into_iter().map(|t| closed.closure(t)).collect();
        for (r, x, y) in edges {
            chase.add_edge(closed, &r, x, y);
        }
        let mut frontier: Vec<usize> = (0..chase.names.len()).collect();
        for _ in 0..depth {
            let mut next = Vec::new();
            for e in frontier {
                let exists: Vec<RoleExpr> = chase.types[e]
                    .iter()
                    .filter_map(|b| match b {
                        BasicConcept::Exists(r) => Some(r.clone()),
                        BasicConcept::Name(_) => None,
                    })
                    .collect();
                for r in exists {
                    let needed = closed.closure([BasicConcept::Exists(r.inv())]);
                    if chase.has_successor(&r, e, &needed) {
                        continue;
                    }
                    let child = chase.names.len();
                    chase.names.push(format!("{}.{}", chase.names[e], r));
                    chase.types.push(needed);
                    chase.add_edge(closed, &r, e, child);
                    next.push(child);
                }
            }
            frontier = next;
        }
        chase
    }

    fn add_edge(&mut self, closed: &ClosedTBox, r: &RoleExpr, x: usize, y: usize) {
        for q in closed.role_supers(r) {
            let (s, t) = if q.inverse { (y, x) } else { (x, y) };
            self.roles.insert((q.name, s, t));
        }
    }

    fn has_successor(&self, r: &RoleExpr, e: usize, needed: &BTreeSet<BasicConcept>) -> bool {
        self.roles.iter().any(|(name, s, t)| {
            if *name != r.name {
                return false;
            }
            let succ = match (r.inverse, *s == e, *t == e) {
                (false, true, _) => *t,
                (true, _, true) => *s,
                _ => return false,
            };
            needed.is_subset(&self.types[succ])
        })
    }

    /// Number of elements, named and anonymous.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Whether the query has a match whose individuals map to themselves.
    pub fn satisfies(&self, q: &Bcq) -> bool {
        let named: BTreeMap<&str, usize> =
            self.names[..self.named].iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut binding: BTreeMap<&str, usize> = BTreeMap::new();
        self.search(&q.atoms, &named, &mut binding)
    }

    fn search<'q>(
        &self,
        atoms: &'q [super::QueryAtom],
        named: &BTreeMap<&str, usize>,
        binding: &mut BTreeMap<&'q str, usize>,
    ) -> bool {
        let Some((atom, rest)) = atoms.split_first() else {
            return true;
        };
        let resolve = |t: &Term, binding: &BTreeMap<&'q str, usize>| -> Option<Option<usize>> {
            match t {
                Term::Ind(i) => named.get(i.as_str()).map(|&e| Some(e)),
                Term::Var(v) => Some(binding.get(v.as_str()).copied()),
            }
        };
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        match atom.terms.as_slice() {
            [t] => {
                let Some(fixed) = resolve(t, binding) else { return false };
                let concept = BasicConcept::name(atom.predicate.as_str());
                for e in 0..self.names.len() {
                    if fixed.map_or(true, |f| f == e) && self.types[e].contains(&concept) {
                        candidates.push(vec![e]);
                    }
                }
            }
            [t, u] => {
                let (Some(ft), Some(fu)) = (resolve(t, binding), resolve(u, binding)) else { return false };
                for (name, s, o) in &self.roles {
                    if *name == atom.predicate && ft.map_or(true, |f| f == *s) && fu.map_or(true, |f| f == *o) {
                        candidates.push(vec![*s, *o]);
                    }
                }
            }
            _ => return false,
        }
        for values in candidates {
            let mut added = Vec::new();
            let mut ok = true;
            for (t, v) in atom.terms.iter().zip(values) {
                if let Term::Var(name) = t {
                    match binding.get(name.as_str()) {
                        Some(&b) if b != v => ok = false,
                        Some(_) => {}
                        None => {
                            binding.insert(name.as_str(), v);
                            added.push(name.as_str());
                        }
                    }
                }
            }
            if ok && self.search(rest, named, binding) {
                return true;
            }
            for a in added {
                binding.remove(a);
            }
        }
        false
    }
}

/// Chase depth that suffices for `q`: the number of role expressions plus the query size.
pub fn default_depth(closed: &ClosedTBox, q: &Bcq) -> usize {
    2 * closed.role_names().len() + q.len()
}

/// Whether `subset` of the ABox, with the TBox, entails `q`.
pub fn entails_bcq(closed: &ClosedTBox, abox: &ABox, subset: &FactSet, q: &Bcq) -> Result<bool> {
    if !super::is_consistent(closed, abox, subset) {
        return Err(Error::InconsistentInput);
    }
    Ok(Chase::build(closed, abox, subset, default_depth(closed, q)).satisfies(q))
}
