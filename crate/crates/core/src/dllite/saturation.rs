//! Consistency by building the types of individuals and anonymous successors directly
//! from the axioms. Shares no code with the pattern-based check.

use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{Args, Axiom, BasicConcept, FactAtom, RoleExpr, TBox};

type Type = BTreeSet<BasicConcept>;

/// Consistency checker that saturates types instead of matching patterns.
#[derive(Debug, Clone)]
pub struct Saturator {
    supers: BTreeMap<RoleExpr, BTreeSet<RoleExpr>>,
    role_nis: Vec<(RoleExpr, RoleExpr)>,
    pis: Vec<(Type, BasicConcept)>,
    nis: Vec<Type>,
}

impl Saturator {
    pub fn new(tbox: &TBox) -> Self {
        let mut supers: BTreeMap<RoleExpr, BTreeSet<RoleExpr>> = BTreeMap::new();
        for r in tbox.signature().roles {
            for e in [RoleExpr::named(r.as_str()), RoleExpr::inverse_of(r.as_str())] {
                supers.insert(e.clone(), BTreeSet::from([e]));
            }
        }
        let mut role_nis = Vec::new();
        let mut pis = Vec::new();
        let mut nis = Vec::new();
        let mut role_pis = Vec::new();
        for ax in tbox.axioms() {
            match ax {
                Axiom::Role { lhs, rhs, negated: false } => role_pis.push((lhs.clone(), rhs.clone())),
                Axiom::Role { lhs, rhs, negated: true } => role_nis.push((lhs.clone(), rhs.clone())),
                Axiom::Concept { lhs, rhs, negated } => {
                    let body: Type = lhs.iter().cloned().collect();
                    if *negated {
                        let mut c = body;
                        c.insert(rhs.clone());
                        nis.push(c);
                    } else {
                        pis.push((body, rhs.clone()));
                    }
                }
            }
        }
        // naive fixpoint over the role hierarchy
        loop {
            let mut grew = false;
            let keys: Vec<RoleExpr> = supers.keys().cloned().collect();
            for s in keys {
                let current: Vec<RoleExpr> = supers[&s].iter().cloned().collect();
                for q in current {
                    for (a, b) in &role_pis {
                        for (from, to) in [(a.clone(), b.clone()), (a.inv(), b.inv())] {
                            if from == q && supers.get_mut(&s).expect("key").insert(to) {
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Saturator { supers, role_nis, pis, nis }
    }

    fn close(&self, mut t: Type) -> Type {
        loop {
            let before = t.len();
            for (body, head) in &self.pis {
                if body.is_subset(&t) {
                    t.insert(head.clone());
                }
            }
            let exists: Vec<RoleExpr> = t
                .iter()
                .filter_map(|b| match b {
                    BasicConcept::Exists(r) => Some(r.clone()),
                    BasicConcept::Name(_) => None,
                })
                .collect();
            for r in exists {
                for q in self.supers.get(&r).into_iter().flatten() {
                    t.insert(BasicConcept::Exists(q.clone()));
                }
            }
            if t.len() == before {
                return t;
            }
        }
    }

    fn roles_clash(&self, roles: &BTreeSet<RoleExpr>) -> bool {
        self.role_nis.iter().any(|(a, b)| {
            (roles.contains(a) && roles.contains(b)) || (roles.contains(&a.inv()) && roles.contains(&b.inv()))
        })
    }

    fn role_closure(&self, r: &RoleExpr) -> BTreeSet<RoleExpr> {
        self.supers.get(r).cloned().unwrap_or_else(|| BTreeSet::from([r.clone()]))
    }

    fn type_ok(&self, t: &Type, assumed: &mut Vec<RoleExpr>) -> bool {
        if self.nis.iter().any(|ni| ni.is_subset(t)) {
            return false;
        }
        for b in t {
            if let BasicConcept::Exists(r) = b {
                if !self.successor_ok(r, assumed) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether an anonymous `r`-successor can exist, assuming the roles on the stack can.
    fn successor_ok(&self, r: &RoleExpr, assumed: &mut Vec<RoleExpr>) -> bool {
        if assumed.contains(r) {
            return true;
        }
        if self.roles_clash(&self.role_closure(r)) {
            return false;
        }
        assumed.push(r.clone());
        let t = self.close(Type::from([BasicConcept::Exists(r.inv())]));
        let ok = self.type_ok(&t, assumed);
        assumed.pop();
        ok
    }

    /// Whether the assertions have a model together with the TBox.
    pub fn is_consistent<'a>(&self, facts: impl IntoIterator<Item = &'a FactAtom>) -> bool {
        let mut types: BTreeMap<&str, Type> = BTreeMap::new();
        let mut edges: BTreeMap<(&str, &str), BTreeSet<RoleExpr>> = BTreeMap::new();
        for f in facts {
            match &f.args {
                Args::Unary(a) => {
                    types.entry(a).or_default().insert(BasicConcept::name(f.predicate.as_str()));
                }
                Args::Binary(a, b) => {
                    let r = RoleExpr::named(f.predicate.as_str());
                    types.entry(a).or_default().insert(BasicConcept::Exists(r.clone()));
                    types.entry(b).or_default().insert(BasicConcept::Exists(r.inv()));
                    edges.entry((a, b)).or_default().extend(self.role_closure(&r));
                    edges.entry((b, a)).or_default().extend(self.role_closure(&r.inv()));
                }
            }
        }
        if edges.values().any(|roles| self.roles_clash(roles)) {
            return false;
        }
        types.into_values().all(|t| self.type_ok(&self.close(t), &mut Vec::new()))
    }
}
