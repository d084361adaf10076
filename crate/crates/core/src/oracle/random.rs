use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::argumentation::{Attack, Psetaf, Setaf};
use crate::error::Result;
use crate::kb::{
    ABox, Assertion, Axiom, BasicConcept, FactAtom, FactId, FactSet, KbMode, KnowledgeBase, PriorityRelation,
    RoleExpr, TBox, ValidatedKb,
};
use crate::semantics::PartialPreorder;

/// How priorities between conflicting facts are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorityStyle {
    /// Each conflicting pair is ordered along a hidden linear order with some probability.
    Sparse,
    /// As `Sparse`, then closed under chains between conflicting facts.
    Transitive,
    /// Facts get random levels and higher levels win.
    Scored,
}

/// Parameters of the random knowledge-base generator.
#[derive(Debug, Clone)]
pub struct KbParams {
    pub max_facts: usize,
    /// Given conflicts instead of a TBox.
    pub hypergraph: bool,
    /// Expected number of conflicts per fact in hypergraph mode.
    pub conflict_density: f64,
    pub max_arity: usize,
    /// Probability that a conflicting pair is ordered.
    pub priority_density: f64,
    pub style: PriorityStyle,
}

impl Default for KbParams {
    fn default() -> Self {
        KbParams {
            max_facts: 10,
            hypergraph: false,
            conflict_density: 0.6,
            max_arity: 3,
            priority_density: 0.5,
            style: PriorityStyle::Sparse,
        }
    }
}

const CONCEPTS: [&str; 5] = ["A", "B", "C", "D", "E"];
const ROLES: [&str; 2] = ["R", "S"];
const INDIVIDUALS: [&str; 2] = ["a", "b"];

fn random_role<R: Rng>(rng: &mut R) -> RoleExpr {
    RoleExpr { name: ROLES[rng.gen_range(0..ROLES.len())].to_owned(), inverse: rng.gen_bool(0.5) }
}

fn random_basic<R: Rng>(rng: &mut R) -> BasicConcept {
    if rng.gen_bool(0.3) {
        BasicConcept::Exists(random_role(rng))
    } else {
        BasicConcept::name(CONCEPTS[rng.gen_range(0..CONCEPTS.len())])
    }
}

fn random_tbox<R: Rng>(rng: &mut R) -> TBox {
    let mut axioms = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let lhs = (0..if rng.gen_bool(0.2) { 2 } else { 1 }).map(|_| random_basic(rng)).collect();
        axioms.push(Axiom::inclusion(lhs, random_basic(rng)));
    }
    for _ in 0..rng.gen_range(2..=5) {
        let lhs = (0..if rng.gen_bool(0.25) { 2 } else { 1 }).map(|_| random_basic(rng)).collect();
        axioms.push(Axiom::disjoint(lhs, random_basic(rng)));
    }
    if rng.gen_bool(0.3) {
        axioms.push(Axiom::role_inclusion(random_role(rng), random_role(rng)));
    }
    if rng.gen_bool(0.15) {
        axioms.push(Axiom::role_disjoint(random_role(rng), random_role(rng)));
    }
    TBox::horn(axioms).expect("horn TBox")
}

fn random_atom<R: Rng>(rng: &mut R) -> FactAtom {
    let ind = |rng: &mut R| INDIVIDUALS[rng.gen_range(0..INDIVIDUALS.len())];
    if rng.gen_bool(0.35) {
        FactAtom::role(ROLES[rng.gen_range(0..ROLES.len())], ind(rng), ind(rng))
    } else {
        FactAtom::concept(CONCEPTS[rng.gen_range(0..CONCEPTS.len())], ind(rng))
    }
}

fn fact_id(i: usize) -> String {
    format!("f{:02}", i + 1)
}

/// A random prioritized knowledge base with at most `max_facts` facts and an acyclic priority
/// between conflicting facts.
pub fn random_kb<R: Rng>(rng: &mut R, params: &KbParams) -> KnowledgeBase {
    let n = rng.gen_range(params.max_facts.min(4)..=params.max_facts.max(2));
    let mut kb = if params.hypergraph {
        let abox = ABox::new((0..n).map(|i| Assertion::bare(fact_id(i))).collect()).expect("distinct ids");
        let count = ((n as f64) * params.conflict_density).round() as usize;
        let mut edges: Vec<FactSet> = Vec::new();
        for _ in 0..count.max(1) {
            let arity = rng.gen_range(2..=params.max_arity.clamp(2, n));
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(rng);
            let e: FactSet = ids[..arity].iter().map(|&i| FactId::from_index(i)).collect();
            if !edges.iter().any(|d| d.is_subset(&e) || e.is_subset(d)) {
                edges.push(e);
            }
        }
        KnowledgeBase::hypergraph(abox, edges, PriorityRelation::default()).expect("antichain")
    } else {
        let tbox = random_tbox(rng);
        let mut atoms: Vec<FactAtom> = Vec::new();
        while atoms.len() < n {
            let a = random_atom(rng);
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        let facts = atoms.into_iter().enumerate().map(|(i, a)| Assertion::new(fact_id(i), a)).collect();
        KnowledgeBase::new(tbox, ABox::new(facts).expect("distinct facts"), PriorityRelation::default())
    };
    let conflicts = ValidatedKb::from_kb(kb.clone()).expect("empty priority is valid").conflicts().clone();
    let pairs = conflicts.pairs();
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let scores: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
    let mut rel = PriorityRelation::default();
    for &(a, b) in &pairs {
        match params.style {
            PriorityStyle::Scored => {
                let (sa, sb) = (scores[a.index()], scores[b.index()]);
                if sa > sb {
                    rel.insert(a, b);
                } else if sb > sa {
                    rel.insert(b, a);
                }
            }
            PriorityStyle::Sparse | PriorityStyle::Transitive => {
                if rng.gen_bool(params.priority_density) {
                    if rank[a.index()] < rank[b.index()] {
                        rel.insert(a, b);
                    } else {
                        rel.insert(b, a);
                    }
                }
            }
        }
    }
    if params.style == PriorityStyle::Transitive {
        loop {
            let closure = crate::kb::transitive_closure(&rel);
            let missing: Vec<(FactId, FactId)> =
                closure.into_iter().filter(|&(a, b)| pairs.contains(&ordered(a, b)) && !rel.prefers(a, b)).collect();
            if missing.is_empty() {
                break;
            }
            for (a, b) in missing {
                rel.insert(a, b);
            }
        }
    }
    kb.priority = rel;
    kb
}

fn ordered(a: FactId, b: FactId) -> (FactId, FactId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The same conflicts expressed in ontology mode: fact `f` becomes `H_f(o)` and each
/// conflict `{f1, ..., fk}` becomes `H_f1 & ... & H_f(k-1) <= not H_fk`.
pub fn hypergraph_to_ontology(kb: &KnowledgeBase) -> Option<KnowledgeBase> {
    let KbMode::Hypergraph { conflicts } = &kb.mode else { return None };
    let concept = |f: FactId| format!("H_{}", kb.abox.get(f).id);
    let axioms = conflicts
        .iter()
        .map(|c| {
            let ids: Vec<FactId> = c.iter().copied().collect();
            let (last, rest) = ids.split_last().expect("non-empty conflict");
            Axiom::disjoint(rest.iter().map(|&f| BasicConcept::name(concept(f))).collect(), BasicConcept::name(concept(*last)))
        })
        .collect();
    let facts = kb.abox.iter().map(|(f, a)| Assertion::new(a.id.clone(), FactAtom::concept(concept(f), "o"))).collect();
    let abox = ABox::new(facts).ok()?;
    Some(KnowledgeBase::new(TBox::horn(axioms).ok()?, abox, kb.priority.clone()))
}

/// A framework with `n` arguments and up to `attacks` attacks of source size at most `max_source`.
pub fn random_setaf<R: Rng>(rng: &mut R, n: usize, attacks: usize, max_source: usize) -> Setaf {
    let mut out = BTreeSet::new();
    for _ in 0..attacks {
        let size = rng.gen_range(1..=max_source.clamp(1, n));
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        out.insert(Attack::new(ids[..size].iter().copied(), rng.gen_range(0..n)));
    }
    Setaf::numbered(n, out).expect("indices in range")
}

/// A symmetric irreflexive framework with an acyclic preference.
pub fn random_symmetric_paf<R: Rng>(rng: &mut R, n: usize, density: f64, pref_density: f64) -> Psetaf {
    let mut attacks = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                attacks.push(Attack::new([a], b));
                attacks.push(Attack::new([b], a));
            }
        }
    }
    let f = Setaf::numbered(n, attacks).expect("indices in range");
    let pref = random_order_pairs(rng, n, pref_density, false);
    Psetaf::new(f, pref).expect("acyclic")
}

/// A strongly symmetric framework: for random sets `C`, every `C \ {a} ↝ a`.
pub fn random_strongly_symmetric<R: Rng>(rng: &mut R, n: usize, sets: usize, max_set: usize) -> Setaf {
    let mut attacks = BTreeSet::new();
    for _ in 0..if n < 2 { 0 } else { sets } {
        let size = rng.gen_range(2..=max_set.clamp(2, n));
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        let c = &ids[..size];
        for &a in c {
            attacks.insert(Attack::new(c.iter().copied().filter(|&b| b != a), a));
        }
    }
    Setaf::numbered(n, attacks).expect("indices in range")
}

/// A transitive acyclic preference over `n` arguments.
pub fn random_transitive_preference<R: Rng>(rng: &mut R, n: usize, density: f64) -> Vec<(usize, usize)> {
    random_order_pairs(rng, n, density, true)
}

fn random_order_pairs<R: Rng>(rng: &mut R, n: usize, density: f64, transitive: bool) -> Vec<(usize, usize)> {
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    if transitive {
        // a random weak order: levels drawn independently
        let level: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let mut out = Vec::new();
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            for a in 0..n {
                for b in 0..n {
                    if level[a] > level[b] {
                        out.push((a, b));
                    }
                }
            }
        } else {
            for a in 0..n {
                for b in 0..n {
                    if rank[a] < rank[b] && rng.gen_bool(density) {
                        out.push((a, b));
                    }
                }
            }
            out = crate::kb::transitive_closure(&PriorityRelation::new(
                out.into_iter().map(|(a, b)| (FactId::from_index(a), FactId::from_index(b))),
            ))
            .into_iter()
            .map(|(a, b)| (a.index(), b.index()))
            .collect();
        }
        return out;
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rank[a] < rank[b] && rng.gen_bool(density) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A random partial preorder over `n` facts.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<PartialPreorder> {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(density) {
                pairs.push((FactId::from_index(a), FactId::from_index(b)));
            }
        }
    }
    PartialPreorder::generated_by(n, pairs)
}
