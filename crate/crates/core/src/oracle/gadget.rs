use crate::error::{Error, Result};
use crate::kb::{
    ABox, Assertion, Axiom, BasicConcept, FactAtom, FactSet, KnowledgeBase, PriorityRelation, RoleExpr, TBox,
};

/// A CNF over variables `1..=vars`; literals are signed variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::InvalidConflicts("a CNF needs at least one clause".into()));
        }
        for c in &clauses {
            if c.is_empty() || c.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > vars) {
                return Err(Error::InvalidConflicts(format!("bad clause {c:?} over {vars} variables")));
            }
        }
        Ok(Cnf { vars, clauses })
    }
}

/// Truth-table satisfiability.
pub fn cnf_satisfiable(phi: &Cnf) -> bool {
    (0u32..1 << phi.vars).any(|val| {
        phi.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = val >> (l.unsigned_abs() - 1) & 1 == 1;
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    })
}

fn exists(role: &str, inverse: bool) -> BasicConcept {
    BasicConcept::Exists(RoleExpr { name: role.to_owned(), inverse })
}

/// Knowledge base in which `A'` (the `Unsat` and `Block` facts, returned alongside)
/// is a globally-optimal repair exactly when the CNF is unsatisfiable.
pub fn gadget_kb_from_cnf(phi: &Cnf) -> (KnowledgeBase, FactSet) {
    let tbox = TBox::horn(vec![
        Axiom::disjoint(vec![exists("P", true)], exists("N", true)),
        Axiom::disjoint(vec![exists("P", false)], exists("Unsat", true)),
        Axiom::disjoint(vec![exists("N", false)], exists("Unsat", true)),
        Axiom::disjoint(vec![exists("Block", true)], exists("P", true)),
        Axiom::disjoint(vec![exists("Block", true)], exists("N", true)),
        Axiom::disjoint(vec![BasicConcept::name("Exist")], exists("Block", false)),
        Axiom::disjoint(vec![BasicConcept::name("Exist")], exists("Unsat", false)),
    ])
    .expect("valid gadget TBox");
    let mut facts = Vec::new();
    let mut literals = Vec::new();
    for (i, clause) in phi.clauses.iter().enumerate() {
        let c = format!("c{}", i + 1);
        facts.push(Assertion::new(format!("u{}", i + 1), FactAtom::role("Unsat", "a", c.as_str())));
        let mut seen = Vec::new();
        for &l in clause {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            let j = l.unsigned_abs();
            let (pred, tag) = if l > 0 { ("P", "p") } else { ("N", "n") };
            facts.push(Assertion::new(format!("{tag}{}_{j}", i + 1), FactAtom::role(pred, c.as_str(), format!("x{j}"))));
            literals.push((facts.len() - 1, i, j));
        }
    }
    let blocks_start = facts.len();
    for j in 1..=phi.vars {
        facts.push(Assertion::new(format!("b{j}"), FactAtom::role("Block", "a", format!("x{j}"))));
    }
    let exist = facts.len();
    facts.push(Assertion::new("e", FactAtom::concept("Exist", "a")));
    let abox = ABox::new(facts).expect("distinct gadget facts");
    let id = crate::kb::FactId::from_index;
    let mut pref = PriorityRelation::default();
    for j in 0..phi.vars {
        pref.insert(id(exist), id(blocks_start + j));
    }
    let unsat_of = |clause: usize| {
        let before: usize = phi.clauses[..clause].iter().map(|c| distinct(c) + 1).sum();
        before
    };
    for &(lit, clause, var) in &literals {
        pref.insert(id(blocks_start + var as usize - 1), id(lit));
        pref.insert(id(lit), id(unsat_of(clause)));
    }
    let candidate: FactSet =
        (0..phi.clauses.len()).map(|c| id(unsat_of(c))).chain((0..phi.vars).map(|j| id(blocks_start + j))).collect();
    (KnowledgeBase::new(tbox, abox, pref), candidate)
}

fn distinct(clause: &[i32]) -> usize {
    let mut c = clause.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
