use super::{stratify, Atom, Program, Rule, Term};
use crate::argumentation::Setaf;
use crate::dllite::{orderings, ClosedTBox};
use crate::kb::{Args, KnowledgeBase, Signature};

const RESERVED: [&str; 8] = ["arg", "acc", "def", "pref", "odd", "next", "att", "confl"];

/// Name of a knowledge-base predicate inside the generated programs; names that could
/// collide with the encoding's own predicates get a `kb_` prefix.
pub fn kb_predicate(name: &str) -> String {
    let stem = name.split('_').next().unwrap_or(name);
    let numbered = name.len() > stem.len() && name[stem.len() + 1..].chars().all(|c| c.is_ascii_digit());
    if name.starts_with("kb_") || RESERVED.contains(&name) || (RESERVED.contains(&stem) && numbered) {
        format!("kb_{name}")
    } else {
        name.to_owned()
    }
}

fn var(name: &str, i: usize) -> Term {
    Term::Var(format!("{name}{i}"))
}

fn att(i: usize) -> String {
    format!("att_{i}")
}

fn x() -> Term {
    Term::var("X")
}

/// Facts `arg(a)`, `att_i(s1, ..., si, t)` and the rules
/// `acc(X) :- arg(X), not def(X)` and `def(X) :- att_i(Y1, ..., Yi, X), acc(Y1), ..., acc(Yi)`.
pub fn gen_setaf_program(f: &Setaf) -> Program {
    let mut rules = Vec::new();
    for name in f.names() {
        rules.push(Rule::fact(Atom::ground("arg", [name.as_str()])));
    }
    for a in f.attacks() {
        let args = a.source.iter().chain([&a.target]).map(|&i| f.name(i));
        rules.push(Rule::fact(Atom::ground(att(a.source.len()), args)));
    }
    rules.push(Rule::new(
        Atom::new("acc", vec![x()]),
        vec![Atom::new("arg", vec![x()])],
        vec![Atom::new("def", vec![x()])],
    ));
    for i in 1..=f.max_attack_size().max(1) {
        rules.push(def_rule("def", "acc", i, Vec::new(), Vec::new()));
    }
    Program::from_safe(rules)
}

fn def_rule(head: &str, acc: &str, i: usize, extra_pos: Vec<Atom>, extra_neg: Vec<Atom>) -> Rule {
    let ys: Vec<Term> = (1..=i).map(|j| var("Y", j)).collect();
    let mut att_terms = ys.clone();
    att_terms.push(x());
    let mut pos = vec![Atom::new(att(i), att_terms)];
    pos.extend(ys.into_iter().map(|y| Atom::new(acc, vec![y])));
    pos.extend(extra_pos);
    Rule::new(Atom::new(head, vec![x()]), pos, extra_neg)
}

/// Rules computing `confl_k`, `att_i` and `arg` from id-annotated assertions and `pref` facts.
fn conflict_rules(closed: &ClosedTBox, signature: &Signature) -> (Vec<Rule>, usize) {
    let mut rules = Vec::new();
    let n = closed.max_pattern_size();
    for p in closed.patterns() {
        for order in orderings(p) {
            let k = order.len() - 1;
            let zs: Vec<Term> = (1..=order.len()).map(|j| var("Z", j)).collect();
            let body: Vec<Atom> = order
                .iter()
                .zip(&zs)
                .map(|(a, z)| {
                    let mut terms: Vec<Term> = a.terms.iter().map(|&v| var("X", v)).collect();
                    terms.push(z.clone());
                    Atom::new(kb_predicate(&a.predicate), terms)
                })
                .collect();
            let mut neg = Vec::new();
            for j in 0..k {
                for tuple in tuples(&zs, j + 1) {
                    neg.push(Atom::new(format!("confl_{j}"), tuple));
                }
            }
            rules.push(Rule::new(Atom::new(format!("confl_{k}"), zs), body, neg));
        }
    }
    for i in 1..n {
        let zs: Vec<Term> = (1..=i + 1).map(|j| var("Z", j)).collect();
        let target = zs[i].clone();
        let neg = zs[..i].iter().map(|z| Atom::new("pref", vec![target.clone(), z.clone()])).collect();
        rules.push(Rule::new(Atom::new(att(i), zs.clone()), vec![Atom::new(format!("confl_{i}"), zs)], neg));
    }
    let z = Term::var("Z");
    let not_self = || vec![Atom::new("confl_0", vec![Term::var("Z")])];
    let mut concepts: Vec<&String> = signature.concepts.iter().chain(closed.concept_names()).collect();
    concepts.sort();
    concepts.dedup();
    for c in concepts {
        rules.push(Rule::new(
            Atom::new("arg", vec![z.clone()]),
            vec![Atom::new(kb_predicate(c), vec![x(), z.clone()])],
            not_self(),
        ));
    }
    let mut roles: Vec<&String> = signature.roles.iter().chain(closed.role_names()).collect();
    roles.sort();
    roles.dedup();
    for r in roles {
        rules.push(Rule::new(
            Atom::new("arg", vec![z.clone()]),
            vec![Atom::new(kb_predicate(r), vec![x(), Term::var("Y"), z.clone()])],
            not_self(),
        ));
    }
    (rules, n)
}

fn tuples(items: &[Term], len: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |i| {
                    let mut t = t.clone();
                    t.push(i.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Number of strata of the conflict part of the knowledge-base program.
pub fn stratification_depth(closed: &ClosedTBox, signature: &Signature) -> usize {
    let (rules, _) = conflict_rules(closed, signature);
    stratify(&Program::from_safe(rules)).expect("conflict rules are stratified").depth()
}

/// Program whose well-founded model, together with [`kb_fact_program`], makes `acc(id)` true
/// exactly for the facts in the grounded extension.
///
/// The argumentation rules carry a guard that only becomes true once the conflict part has
/// reached its fixpoint in the alternating computation.
pub fn gen_kb_program(closed: &ClosedTBox, signature: &Signature) -> Program {
    let (mut rules, n) = conflict_rules(closed, signature);
    let p = stratify(&Program::from_safe(rules.clone())).expect("conflict rules are stratified").depth();
    let mut guard_pos = Vec::new();
    let mut guard_neg = Vec::new();
    for i in 0..=2 * p {
        let a = Atom::ground("odd", [i.to_string()]);
        if i % 2 == 1 {
            guard_pos.push(a);
        } else {
            guard_neg.push(a);
        }
    }
    let mut acc_neg = vec![Atom::new("def", vec![x()])];
    acc_neg.extend(guard_neg.iter().cloned());
    let mut acc_pos = vec![Atom::new("arg", vec![x()])];
    acc_pos.extend(guard_pos.iter().cloned());
    rules.push(Rule::new(Atom::new("acc", vec![x()]), acc_pos, acc_neg));
    for i in 1..n {
        rules.push(def_rule("def", "acc", i, guard_pos.clone(), guard_neg.clone()));
    }
    rules.push(Rule::new(
        Atom::new("odd", vec![x()]),
        vec![Atom::new("next", vec![Term::var("Y"), x()])],
        vec![Atom::new("odd", vec![Term::var("Y")])],
    ));
    for i in 0..2 * p {
        rules.push(Rule::fact(Atom::ground("next", [i.to_string(), (i + 1).to_string()])));
    }
    Program::from_safe(rules)
}

/// Stratified program whose `acc_{2d}` atoms are exactly the facts in `Γ^d(∅)`.
pub fn gen_gamma_program(closed: &ClosedTBox, signature: &Signature, d: usize) -> Program {
    let (mut rules, n) = conflict_rules(closed, signature);
    let acc = |j: usize| format!("acc_{j}");
    let def = |j: usize| format!("def_{j}");
    rules.push(Rule::new(Atom::new(acc(1), vec![x()]), vec![Atom::new("arg", vec![x()])], Vec::new()));
    for j in 1..2 * d.max(1) {
        for i in 1..n {
            rules.push(def_rule(&def(j), &acc(j), i, Vec::new(), Vec::new()));
        }
        rules.push(Rule::new(
            Atom::new(acc(j + 1), vec![x()]),
            vec![Atom::new("arg", vec![x()])],
            vec![Atom::new(def(j), vec![x()])],
        ));
    }
    Program::from_safe(rules)
}

/// Assertions with their identifier as an extra last argument, and `pref` facts.
pub fn kb_fact_program(kb: &KnowledgeBase) -> Program {
    let mut rules = Vec::new();
    for (_, fact) in kb.abox.iter() {
        let Some(atom) = &fact.atom else { continue };
        let mut args: Vec<&str> = match &atom.args {
            Args::Unary(a) => vec![a],
            Args::Binary(a, b) => vec![a, b],
        };
        args.push(&fact.id);
        rules.push(Rule::fact(Atom::ground(kb_predicate(&atom.predicate), args)));
    }
    for (a, b) in kb.priority.iter() {
        rules.push(Rule::fact(Atom::ground("pref", [kb.abox.get(a).id.as_str(), kb.abox.get(b).id.as_str()])));
    }
    Program::from_safe(rules)
}
