use std::collections::{BTreeMap, BTreeSet};

use super::pattern::{self, Pattern};
use crate::kb::{Axiom, BasicConcept, Dialect, RoleExpr, TBox};

type ConceptSet = BTreeSet<BasicConcept>;

/// A TBox together with everything derived from it that reasoning needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedTBox {
    tbox: TBox,
    concepts: BTreeSet<String>,
    roles: BTreeSet<String>,
    role_supers: BTreeMap<RoleExpr, BTreeSet<RoleExpr>>,
    role_disjoint: BTreeSet<(RoleExpr, RoleExpr)>,
    rules: Vec<(ConceptSet, BasicConcept)>,
    unsat_roles: BTreeSet<RoleExpr>,
    clash_sets: Vec<ConceptSet>,
    patterns: Vec<Pattern>,
}

/// Saturates a TBox: role hierarchy, negative inclusions, unsatisfiable concepts and roles,
/// and the minimal sets of basic concepts that cannot hold together.
pub fn close_tbox(tbox: &TBox) -> ClosedTBox {
    let sig = tbox.signature();
    let roles = sig.roles.clone();
    let role_exprs: Vec<RoleExpr> =
        roles.iter().flat_map(|r| [RoleExpr::named(r.as_str()), RoleExpr::inverse_of(r.as_str())]).collect();

    // role hierarchy, reflexive and transitive, closed under inverse
    let mut direct: BTreeMap<RoleExpr, BTreeSet<RoleExpr>> = BTreeMap::new();
    for ax in tbox.axioms() {
        if let Axiom::Role { lhs, rhs, negated: false } = ax {
            direct.entry(lhs.clone()).or_default().insert(rhs.clone());
            direct.entry(lhs.inv()).or_default().insert(rhs.inv());
        }
    }
    let mut role_supers = BTreeMap::new();
    for s in &role_exprs {
        let mut seen = BTreeSet::from([s.clone()]);
        let mut stack = vec![s.clone()];
        while let Some(r) = stack.pop() {
            for q in direct.get(&r).into_iter().flatten() {
                if seen.insert(q.clone()) {
                    stack.push(q.clone());
                }
            }
        }
        role_supers.insert(s.clone(), seen);
    }

    let mut role_disjoint = BTreeSet::new();
    for ax in tbox.axioms() {
        if let Axiom::Role { lhs, rhs, negated: true } = ax {
            for s in &role_exprs {
                for q in &role_exprs {
                    if role_supers[s].contains(lhs) && role_supers[q].contains(rhs) {
                        for (x, y) in [(s.clone(), q.clone()), (q.clone(), s.clone())] {
                            role_disjoint.insert((x.inv(), y.inv()));
                            role_disjoint.insert((x, y));
                        }
                    }
                }
            }
        }
    }

    let mut rules: Vec<(ConceptSet, BasicConcept)> = Vec::new();
    let mut base: Vec<ConceptSet> = Vec::new();
    for ax in tbox.axioms() {
        if let Axiom::Concept { lhs, rhs, negated } = ax {
            let body: ConceptSet = lhs.iter().cloned().collect();
            if *negated {
                let mut c = body;
                c.insert(rhs.clone());
                base.push(c);
            } else if !body.contains(rhs) {
                rules.push((body, rhs.clone()));
            }
        }
    }
    for s in &role_exprs {
        for q in &role_supers[s] {
            if q != s {
                rules.push((ConceptSet::from([BasicConcept::Exists(s.clone())]), BasicConcept::Exists(q.clone())));
            }
        }
    }
    rules.sort();
    rules.dedup();

    let mut unsat_roles: BTreeSet<RoleExpr> =
        role_exprs.iter().filter(|s| role_disjoint.contains(&((*s).clone(), (*s).clone()))).cloned().collect();
    // an anonymous successor through S has exactly the closure of {exists S-} as its type;
    // S is unsatisfiable when that type or the type {exists S} clashes
    loop {
        let mut conditions = base.clone();
        for s in &unsat_roles {
            conditions.push(ConceptSet::from([BasicConcept::Exists(s.clone())]));
        }
        let mut grew = false;
        for s in &role_exprs {
            if unsat_roles.contains(s) {
                continue;
            }
            let fwd = forward(&rules, ConceptSet::from([BasicConcept::Exists(s.clone())]));
            let bwd = forward(&rules, ConceptSet::from([BasicConcept::Exists(s.inv())]));
            if clashes_with(&conditions, &fwd) || clashes_with(&conditions, &bwd) {
                unsat_roles.insert(s.clone());
                unsat_roles.insert(s.inv());
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    for s in &unsat_roles {
        base.push(ConceptSet::from([BasicConcept::Exists(s.clone())]));
    }

    let clash_sets = rewrite(&rules, base);

    let mut closed = ClosedTBox {
        tbox: tbox.clone(),
        concepts: sig.concepts,
        roles,
        role_supers,
        role_disjoint,
        rules,
        unsat_roles,
        clash_sets,
        patterns: Vec::new(),
    };
    closed.patterns = pattern::unsat_patterns(&closed);
    closed
}

fn forward(rules: &[(ConceptSet, BasicConcept)], mut set: ConceptSet) -> ConceptSet {
    loop {
        let mut grew = false;
        for (body, head) in rules {
            if !set.contains(head) && body.is_subset(&set) {
                set.insert(head.clone());
                grew = true;
            }
        }
        if !grew {
            return set;
        }
    }
}

fn clashes_with(conditions: &[ConceptSet], set: &ConceptSet) -> bool {
    conditions.iter().any(|c| c.is_subset(set))
}

fn insert_minimal(found: &mut Vec<ConceptSet>, s: ConceptSet) -> bool {
    if found.iter().any(|f| f.is_subset(&s)) {
        return false;
    }
    found.retain(|f| !s.is_subset(f));
    found.push(s);
    true
}

/// Backward rewriting of clash conditions through the positive rules, keeping minimal sets.
fn rewrite(rules: &[(ConceptSet, BasicConcept)], base: Vec<ConceptSet>) -> Vec<ConceptSet> {
    let mut found: Vec<ConceptSet> = Vec::new();
    let mut queue = Vec::new();
    for b in base {
        if insert_minimal(&mut found, b.clone()) {
            queue.push(b);
        }
    }
    while let Some(set) = queue.pop() {
        if !found.contains(&set) {
            continue;
        }
        for b in &set {
            for (body, head) in rules {
                if head == b {
                    let mut next = set.clone();
                    next.remove(b);
                    next.extend(body.iter().cloned());
                    if insert_minimal(&mut found, next.clone()) {
                        queue.push(next);
                    }
                }
            }
        }
    }
    found.sort();
    found
}

impl ClosedTBox {
    pub fn tbox(&self) -> &TBox {
        &self.tbox
    }

    pub fn concept_names(&self) -> &BTreeSet<String> {
        &self.concepts
    }

    pub fn role_names(&self) -> &BTreeSet<String> {
        &self.roles
    }

    /// Role expressions `Q` with `S ⊑* Q`, including `S`.
    pub fn role_supers(&self, s: &RoleExpr) -> BTreeSet<RoleExpr> {
        self.role_supers.get(s).cloned().unwrap_or_else(|| BTreeSet::from([s.clone()]))
    }

    /// Whether `S ⊑ ¬Q` is entailed at the role level.
    pub fn roles_disjoint(&self, s: &RoleExpr, q: &RoleExpr) -> bool {
        self.role_disjoint.contains(&(s.clone(), q.clone()))
    }

    /// Forward closure of a set of basic concepts under the positive inclusions.
    pub fn closure(&self, set: impl IntoIterator<Item = BasicConcept>) -> BTreeSet<BasicConcept> {
        forward(&self.rules, set.into_iter().collect())
    }

    /// Whether the conjunction of `set` is unsatisfiable.
    pub fn is_clash(&self, set: &BTreeSet<BasicConcept>) -> bool {
        self.clash_sets.iter().any(|c| c.is_subset(set))
    }

    /// Minimal sets of basic concepts whose conjunction is unsatisfiable.
    pub fn clash_sets(&self) -> &[BTreeSet<BasicConcept>] {
        &self.clash_sets
    }

    /// Whether `B1 ⊓ ... ⊓ Bn ⊑ C` is entailed.
    pub fn entails_inclusion(&self, lhs: &[BasicConcept], rhs: &BasicConcept) -> bool {
        let set: BTreeSet<BasicConcept> = lhs.iter().cloned().collect();
        self.is_clash(&set) || self.closure(set).contains(rhs)
    }

    /// Whether `B1 ⊓ ... ⊓ Bn ⊑ ¬C` is entailed.
    pub fn entails_disjoint(&self, lhs: &[BasicConcept], rhs: &BasicConcept) -> bool {
        let set: BTreeSet<BasicConcept> = lhs.iter().chain([rhs]).cloned().collect();
        self.is_clash(&set)
    }

    /// Whether `S ⊑ Q` is entailed.
    pub fn entails_role_inclusion(&self, s: &RoleExpr, q: &RoleExpr) -> bool {
        self.unsat_roles.contains(s) || self.role_supers(s).contains(q)
    }

    /// Basic concepts over the signature that are unsatisfiable.
    pub fn unsatisfiable_concepts(&self) -> BTreeSet<BasicConcept> {
        self.basic_concepts().into_iter().filter(|b| self.is_clash(&BTreeSet::from([b.clone()]))).collect()
    }

    /// Role expressions that are unsatisfiable.
    pub fn unsatisfiable_roles(&self) -> &BTreeSet<RoleExpr> {
        &self.unsat_roles
    }

    /// All basic concepts over the signature.
    pub fn basic_concepts(&self) -> Vec<BasicConcept> {
        let mut out: Vec<BasicConcept> = self.concepts.iter().map(|c| BasicConcept::name(c.as_str())).collect();
        for r in &self.roles {
            out.push(BasicConcept::Exists(RoleExpr::named(r.as_str())));
            out.push(BasicConcept::Exists(RoleExpr::inverse_of(r.as_str())));
        }
        out
    }

    /// The original axioms followed by the derived ones.
    pub fn axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = self.tbox.axioms().to_vec();
        let mut seen: BTreeSet<Axiom> = out.iter().cloned().collect();
        let mut push = |ax: Axiom, out: &mut Vec<Axiom>| {
            if seen.insert(ax.clone()) {
                out.push(ax);
            }
        };
        for b in self.basic_concepts() {
            for c in self.closure([b.clone()]) {
                if c != b {
                    push(Axiom::inclusion(vec![b.clone()], c), &mut out);
                }
            }
        }
        for (s, supers) in &self.role_supers {
            for q in supers {
                if q != s {
                    push(Axiom::role_inclusion(s.clone(), q.clone()), &mut out);
                }
            }
        }
        for (s, q) in &self.role_disjoint {
            push(Axiom::role_disjoint(s.clone(), q.clone()), &mut out);
        }
        for c in &self.clash_sets {
            let mut items: Vec<BasicConcept> = c.iter().cloned().collect();
            let rhs = items.pop().expect("clash sets are non-empty");
            if items.is_empty() {
                items.push(rhs.clone());
            }
            push(Axiom::disjoint(items, rhs), &mut out);
        }
        out
    }

    /// The derived axioms as a TBox of the original dialect.
    pub fn to_tbox(&self) -> TBox {
        let dialect = if self.tbox.dialect() == Dialect::Core
            && self.axioms().iter().all(|a| matches!(a, Axiom::Concept { lhs, .. } if lhs.len() == 1))
        {
            Dialect::Core
        } else {
            Dialect::Horn
        };
        TBox::new(dialect, self.axioms()).expect("derived axioms are well formed")
    }

    /// Query patterns whose matches are exactly the inconsistent sets of assertions,
    /// closed under merging atoms with the same predicate.
    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// Largest number of atoms in a pattern.
    pub fn max_pattern_size(&self) -> usize {
        self.patterns.iter().map(Pattern::len).max().unwrap_or(0)
    }

    pub(crate) fn role_disjoint_pairs(&self) -> &BTreeSet<(RoleExpr, RoleExpr)> {
        &self.role_disjoint
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::{Axiom, RoleExpr};

    fn c(n: &str) -> BasicConcept {
        BasicConcept::name(n)
    }

    fn tbox() -> TBox {
        TBox::horn(vec![
            Axiom::inclusion(vec![c("A")], c("B")),
            Axiom::disjoint(vec![c("B")], c("C")),
            Axiom::role_inclusion(RoleExpr::named("S"), RoleExpr::named("Q")),
            Axiom::disjoint(vec![BasicConcept::exists(RoleExpr::named("Q"))], c("D")),
        ])
        .unwrap()
    }

    #[test]
    fn derives_negative_consequences() {
        let closed = close_tbox(&tbox());
        assert!(closed.entails_inclusion(&[c("A")], &c("B")));
        assert!(closed.entails_disjoint(&[c("A")], &c("C")));
        assert!(closed.entails_disjoint(&[c("C")], &c("A")));
        assert!(closed.entails_role_inclusion(&RoleExpr::named("S"), &RoleExpr::named("Q")));
        assert!(closed.entails_role_inclusion(&RoleExpr::inverse_of("S"), &RoleExpr::inverse_of("Q")));
        assert!(closed.entails_disjoint(&[BasicConcept::exists(RoleExpr::named("S"))], &c("D")));
        assert!(!closed.entails_disjoint(&[c("B")], &c("D")));
    }

    #[test]
    fn closure_is_a_fixpoint_containing_the_input() {
        let t = tbox();
        let closed = close_tbox(&t);
        let axioms: BTreeSet<Axiom> = closed.axioms().into_iter().collect();
        for a in t.axioms() {
            assert!(axioms.contains(a), "{a}");
        }
        let again: BTreeSet<Axiom> = close_tbox(&closed.to_tbox()).axioms().into_iter().collect();
        assert_eq!(again, axioms);
    }

    #[test]
    fn unsatisfiable_concepts_are_found() {
        let t = TBox::horn(vec![Axiom::inclusion(vec![c("A")], c("B")), Axiom::disjoint(vec![c("A")], c("B"))]).unwrap();
        assert!(close_tbox(&t).unsatisfiable_concepts().contains(&c("A")));
    }
}
