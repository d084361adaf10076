//! End-to-end acceptance checks. Runs without the libtest harness so that every check
//! prints one line whether it passes or not.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use orbits::argumentation::{self, classify_symmetry, extensions, is_coherent, kb_to_psetaf, Psetaf, Semantics};
use orbits::dllite::{Bcq, Term};
use orbits::io::{parse_kb, parse_setaf};
use orbits::kb::{is_transitive_priority, score_structured, KnowledgeBase, PriorityRelation};
use orbits::lp::{self, gen_gamma_program, gen_kb_program, gen_setaf_program, kb_fact_program};
use orbits::oracle::{self, Cnf};
use orbits::repairs::{check_repair, enumerate_optimal};
use orbits::semantics::{self, entails, intersection, partial_pr, partial_pr_literal, Mode};
use orbits::{FactSet, RepairKind, ValidatedKb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const SEED: u64 = 20_240_601;
const CORPUS: usize = 1000;

fn docs(name: &str) -> String {
    let path = format!("{}/../../docs/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn load(name: &str) -> ValidatedKb {
    ValidatedKb::from_kb(parse_kb(&docs(name)).expect("parses")).expect("valid")
}

fn named(kb: &ValidatedKb, sets: &[FactSet]) -> BTreeSet<Vec<String>> {
    sets.iter().map(|s| kb.names(s)).collect()
}

fn sets(lists: &[&[&str]]) -> BTreeSet<Vec<String>> {
    lists.iter().map(|l| {
        let mut v: Vec<String> = l.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn validated_corpus() -> Vec<ValidatedKb> {
    oracle::corpus(CORPUS, SEED).into_iter().map(|kb| ValidatedKb::from_kb(kb).expect("valid")).collect()
}

fn optimal(kb: &ValidatedKb, kind: RepairKind) -> BTreeSet<FactSet> {
    enumerate_optimal(kb, kind).expect("within limits").into_iter().collect()
}

fn zoo_example() -> Outcome {
    let start = Instant::now();
    let kb = load("zoo.okb");
    let expected_c = sets(&[&["r", "c", "em"], &["b", "c", "em"]]);
    let mut expected_g = expected_c.clone();
    expected_g.extend(sets(&[&["m", "o", "c", "em"]]));
    let mut expected_p = expected_g.clone();
    expected_p.extend(sets(&[&["r", "h", "ep"], &["b", "h", "ep"], &["m", "o", "h", "ep"]]));
    let rep = enumerate_optimal(&kb, RepairKind::Subset).map_err(|e| e.to_string())?;
    ensure(rep.len() == 12, || format!("{} repairs instead of 12", rep.len()))?;
    for (kind, expected) in [(RepairKind::Pareto, &expected_p), (RepairKind::Global, &expected_g), (RepairKind::Completion, &expected_c)] {
        let got = named(&kb, &enumerate_optimal(&kb, kind).map_err(|e| e.to_string())?);
        ensure(&got == expected, || format!("{kind:?}: got {got:?}"))?;
    }
    let a = |c: &str| Bcq::atom(c, vec![Term::Ind("a".into())]);
    let eat = Bcq::atom("Eat", vec![Term::Ind("a".into()), Term::Ind("b".into())]);
    let eat_some = Bcq::atom("Eat", vec![Term::Ind("a".into()), Term::Var("y".into())]);
    use RepairKind::*;
    let facts: [(&Bcq, RepairKind, Mode, bool); 11] = [
        (&a("Carnivorous"), Completion, Mode::Iar, true),
        (&a("Snake"), Completion, Mode::Ar, true),
        (&a("Snake"), Completion, Mode::Iar, false),
        (&a("Boa"), Completion, Mode::Brave, true),
        (&a("Boa"), Completion, Mode::Ar, false),
        (&a("Snake"), Global, Mode::Ar, false),
        (&a("Carnivorous"), Global, Mode::Ar, true),
        (&a("Carnivorous"), Pareto, Mode::Ar, false),
        (&eat, Pareto, Mode::Ar, true),
        (&eat, Subset, Mode::Ar, false),
        (&eat_some, Pareto, Mode::Ar, true),
    ];
    for (q, kind, mode, expected) in facts {
        let got = entails(&kb, q, kind, mode).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{kind:?}-{mode} on {q}: expected {expected}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("12/6/3/2 repairs and 11 entailment checks in {elapsed:.0?}"))
}

fn gadget_kbs() -> Vec<(Cnf, KnowledgeBase, FactSet)> {
    let literals = [1, -1, 2, -2];
    let clauses: Vec<Vec<i32>> = (1u32..16)
        .map(|m| (0..4).filter(|i| m >> i & 1 == 1).map(|i| literals[i]).collect())
        .collect();
    let mut out = Vec::new();
    for a in 0..clauses.len() {
        out.push(vec![a]);
        for b in a + 1..clauses.len() {
            out.push(vec![a, b]);
            for c in b + 1..clauses.len() {
                out.push(vec![a, b, c]);
            }
        }
    }
    out.into_iter()
        .map(|idx| {
            let phi = Cnf::new(2, idx.iter().map(|&i| clauses[i].clone()).collect()).expect("valid CNF");
            let (kb, cand) = oracle::gadget_kb_from_cnf(&phi);
            (phi, kb, cand)
        })
        .collect()
}

fn chain(corpus: &[ValidatedKb]) -> Outcome {
    let gadgets: Vec<ValidatedKb> = gadget_kbs()
        .into_iter()
        .filter(|(_, kb, _)| kb.abox.len() <= 10)
        .map(|(_, kb, _)| ValidatedKb::from_kb(kb).expect("valid gadget"))
        .collect();
    let mut violations = 0;
    let mut strict = [0usize; 3];
    for kb in corpus.iter().chain(&gadgets) {
        let fam: Vec<BTreeSet<FactSet>> = RepairKind::ALL.iter().map(|&k| optimal(kb, k)).collect();
        for i in 0..3 {
            if !fam[i + 1].is_subset(&fam[i]) {
                violations += 1;
            }
            if fam[i + 1].len() < fam[i].len() {
                strict[i] += 1;
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!(
        "{} knowledge bases, 0 violations; strict P<S {}, G<P {}, C<G {}",
        corpus.len() + gadgets.len(),
        strict[0],
        strict[1],
        strict[2]
    ))
}

fn pareto_is_stable(corpus: &[ValidatedKb]) -> Outcome {
    for (i, kb) in corpus.iter().enumerate() {
        let fw = kb_to_psetaf(kb);
        let stable: BTreeSet<FactSet> = extensions(&fw.psetaf.reduce(), Semantics::Stable)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|e| fw.facts_of(e))
            .collect();
        ensure(stable == optimal(kb, RepairKind::Pareto), || format!("corpus knowledge base {i} differs"))?;
    }
    Ok(format!("{} knowledge bases, exact equality", corpus.len()))
}

fn coherent(f: &argumentation::Setaf) -> bool {
    is_coherent(f).expect("small framework").coherent
}

fn coherence(corpus: &[ValidatedKb]) -> Outcome {
    let mut counts = [0usize; 5];
    for (i, kb) in corpus.iter().enumerate() {
        let reduced = kb_to_psetaf(kb).psetaf.reduce();
        if kb.conflicts().is_binary() {
            counts[0] += 1;
            ensure(coherent(&reduced), || format!("binary-conflict knowledge base {i} is not coherent"))?;
        }
        if is_transitive_priority(kb) {
            counts[1] += 1;
            ensure(coherent(&reduced), || format!("transitive-priority knowledge base {i} is not coherent"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..CORPUS {
        let n = rng.gen_range(1..=10);
        let (density, pref) = (rng.gen_range(0.1..0.9), rng.gen_range(0.0..1.0));
        let paf = oracle::random_symmetric_paf(&mut rng, n, density, pref);
        counts[2] += 1;
        ensure(coherent(&paf.reduce()), || format!("symmetric PAF {t} is not coherent"))?;
        let count = rng.gen_range(0..=n + 2);
        let f = oracle::random_strongly_symmetric(&mut rng, n, count, 4);
        ensure(classify_symmetry(&f).strongly_symmetric, || format!("generator produced a non-symmetric framework at {t}"))?;
        counts[3] += 1;
        ensure(coherent(&f), || format!("strongly symmetric framework {t} is not coherent"))?;
        let pref = oracle::random_transitive_preference(&mut rng, n, 0.5);
        let p = Psetaf::new(f, pref).map_err(|e| e.to_string())?;
        counts[4] += 1;
        ensure(coherent(&p.reduce()), || format!("strongly symmetric PSETAF {t} is not coherent"))?;
    }
    let path = format!("{}/tests/fixtures/symm1_noncoherent.setaf", env!("CARGO_MANIFEST_DIR"));
    let fixture = parse_setaf(&std::fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let report = classify_symmetry(&fixture.setaf);
    ensure(report.symm1 && !report.strongly_symmetric, || "fixture is not a symm1-only framework".into())?;
    let preferred = oracle::brute_extensions(&fixture.setaf, Semantics::Preferred).map_err(|e| e.to_string())?;
    let stable = oracle::brute_extensions(&fixture.setaf, Semantics::Stable).map_err(|e| e.to_string())?;
    ensure(preferred != stable && !coherent(&fixture.setaf), || "fixture is coherent".into())?;
    Ok(format!(
        "0 counterexamples (binary {}, transitive {}, symmetric PAF {}, strongly symmetric {}, with preferences {}); symm1 fixture not coherent",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn sandwich(corpus: &[ValidatedKb]) -> Outcome {
    let mut strict = [0usize; 2];
    for (i, kb) in corpus.iter().enumerate() {
        let e = semantics::elect(kb);
        let g = semantics::grounded_set(kb);
        let p = intersection(&optimal(kb, RepairKind::Pareto).into_iter().collect::<Vec<_>>());
        ensure(e.is_subset(&g) && g.is_subset(&p), || format!("corpus knowledge base {i} breaks the inclusions"))?;
        strict[0] += usize::from(e.len() < g.len());
        strict[1] += usize::from(g.len() < p.len());
    }
    let kb = load("elect.okb");
    let names = |s: &FactSet| kb.names(s);
    ensure(names(&semantics::elect(&kb)) == ["alpha"], || "Elect differs on the elect example".into())?;
    ensure(names(&semantics::grounded_set(&kb)) == ["alpha", "gamma"], || "grounded differs on the elect example".into())?;
    let kb = load("grounded-strict.okb");
    ensure(semantics::grounded_set(&kb).is_empty(), || "grounded set is not empty".into())?;
    let preps = enumerate_optimal(&kb, RepairKind::Pareto).map_err(|e| e.to_string())?;
    ensure(named(&kb, &preps) == sets(&[&["alpha", "delta"], &["beta", "delta"]]), || "Pareto repairs differ".into())?;
    ensure(kb.names(&intersection(&preps)) == ["delta"], || "intersection differs".into())?;
    Ok(format!(
        "inclusions hold on {} knowledge bases (Elect strict {}, grounded strict {}); both examples exact",
        corpus.len(),
        strict[0],
        strict[1]
    ))
}

fn acc_names(model: &lp::ThreeValuedModel) -> BTreeSet<String> {
    model.true_unary("acc")
}

fn wfs(corpus: &[ValidatedKb]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..CORPUS {
        let n = rng.gen_range(1..=12);
        let attacks = rng.gen_range(0..=2 * n);
        let f = oracle::random_setaf(&mut rng, n, attacks, 3);
        let model = lp::well_founded_model(&gen_setaf_program(&f)).map_err(|e| e.to_string())?;
        let expected: BTreeSet<String> = f.set_names(&argumentation::grounded(&f)).into_iter().collect();
        ensure(acc_names(&model) == expected, || format!("framework {t} differs"))?;
    }
    let mut gamma_checks = 0;
    for (i, kb) in corpus.iter().enumerate() {
        let onto = match oracle::hypergraph_to_ontology(kb.kb()) {
            Some(o) => ValidatedKb::from_kb(o).map_err(|e| e.to_string())?,
            None => kb.clone(),
        };
        let closed = onto.closed_tbox().expect("ontology mode");
        let sig = &onto.kb().signature;
        let mut program = gen_kb_program(closed, sig);
        program.extend(kb_fact_program(onto.kb()));
        let model = lp::well_founded_model(&program).map_err(|e| e.to_string())?;
        let expected: BTreeSet<String> = kb.names(&semantics::grounded_set(kb)).into_iter().collect();
        ensure(acc_names(&model) == expected, || format!("knowledge base {i}: acc differs from the grounded set"))?;
        for d in [1, 2, 3, kb.abox().len()] {
            let mut program = gen_gamma_program(closed, sig, d);
            program.extend(kb_fact_program(onto.kb()));
            let model = lp::stratified_model(&program).map_err(|e| e.to_string())?;
            let top = format!("acc_{}", 2 * d);
            let got: BTreeSet<String> =
                model.iter().filter(|a| a.predicate == top).map(|a| a.args[0].clone()).collect();
            let expected: BTreeSet<String> =
                kb.names(&semantics::grounded_approx_set(kb, d)).into_iter().collect();
            ensure(got == expected, || format!("knowledge base {i}, depth {d}: program differs"))?;
            gamma_checks += 1;
        }
    }
    Ok(format!("{CORPUS} frameworks, {} knowledge bases, {gamma_checks} depth-bounded programs agree", corpus.len()))
}

fn partial_preorders() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let params = oracle::KbParams { max_facts: 6, ..oracle::KbParams::default() };
    let mut nonempty = 0;
    for t in 0..200 {
        let p = oracle::KbParams { hypergraph: t % 2 == 1, ..params.clone() };
        let mut kb = oracle::random_kb(&mut rng, &p);
        kb.priority = PriorityRelation::default();
        let kb = ValidatedKb::from_kb(kb).map_err(|e| e.to_string())?;
        let density = rng.gen_range(0.05..0.4);
        let pre = oracle::random_preorder(&mut rng, kb.abox().len(), density).map_err(|e| e.to_string())?;
        let fast = partial_pr(&kb, &pre).map_err(|e| e.to_string())?;
        let literal = partial_pr_literal(&kb, &pre).map_err(|e| e.to_string())?;
        ensure(fast == literal, || format!("instance {t}: fast path {:?} vs literal {:?}", kb.names(&fast), kb.names(&literal)))?;
        let mut strict = PriorityRelation::default();
        for (a, b) in kb.conflicts().pairs() {
            if pre.strictly(a, b) {
                strict.insert(a, b);
            } else if pre.strictly(b, a) {
                strict.insert(b, a);
            }
        }
        let derived = kb.with_priority(strict).map_err(|e| e.to_string())?;
        let crep: Vec<FactSet> = oracle::brute_optimal(&derived, RepairKind::Completion).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(fast == intersection(&crep), || format!("instance {t}: differs from the completion-optimal intersection"))?;
        nonempty += usize::from(!fast.is_empty());
    }
    Ok(format!("200 instances agree ({nonempty} with a non-empty result)"))
}

fn gadgets() -> Outcome {
    let all = gadget_kbs();
    let mut unsat = 0;
    let mut brute_checked = 0;
    for (phi, kb, cand) in &all {
        let v = ValidatedKb::from_kb(kb.clone()).map_err(|e| e.to_string())?;
        let check = check_repair(&v, cand, RepairKind::Global).map_err(|e| e.to_string())?;
        let sat = oracle::cnf_satisfiable(phi);
        ensure(check.holds() == !sat, || format!("{phi:?}: check says {}", check.holds()))?;
        if let Some(w) = check.witness() {
            ensure(v.conflicts().is_consistent(&w.improved), || format!("{phi:?}: witness is inconsistent"))?;
            ensure(
                cand.difference(&w.improved).all(|&a| w.improved.difference(cand).any(|&b| v.prefers(b, a))),
                || format!("{phi:?}: witness is not a global improvement"),
            )?;
        } else {
            ensure(!sat, || format!("{phi:?}: satisfiable but no witness"))?;
        }
        if kb.abox.len() <= oracle::ORACLE_MAX_FACTS {
            let brute = oracle::brute_optimal(&v, RepairKind::Global).map_err(|e| e.to_string())?;
            ensure(brute.contains(cand) == !sat, || format!("{phi:?}: brute-force oracle disagrees"))?;
            brute_checked += 1;
        }
        unsat += usize::from(!sat);
    }
    Ok(format!("{} CNFs ({unsat} unsatisfiable) match the truth table; {brute_checked} also match the oracle", all.len()))
}

fn score_collapse(corpus: &[ValidatedKb]) -> Outcome {
    let mut scored = 0;
    for (i, kb) in corpus.iter().enumerate() {
        if score_structured(kb).is_none() {
            continue;
        }
        scored += 1;
        let p = optimal(kb, RepairKind::Pareto);
        ensure(p == optimal(kb, RepairKind::Global) && p == optimal(kb, RepairKind::Completion), || {
            format!("score-structured knowledge base {i} has distinct families")
        })?;
    }
    Ok(format!("{scored} score-structured knowledge bases, 0 violations"))
}

fn oracle_agreement(corpus: &[ValidatedKb]) -> Outcome {
    let mut checks = 0;
    for (i, kb) in corpus.iter().enumerate() {
        let brute: BTreeSet<FactSet> = oracle::brute_conflicts(kb.kb()).map_err(|e| e.to_string())?.all_conflicts().into_iter().collect();
        let main: BTreeSet<FactSet> = kb.conflicts().all_conflicts().into_iter().collect();
        ensure(brute == main, || format!("knowledge base {i}: conflicts differ"))?;
        if let Some(onto) = oracle::hypergraph_to_ontology(kb.kb()) {
            let v = ValidatedKb::from_kb(onto).map_err(|e| e.to_string())?;
            let encoded: BTreeSet<FactSet> = v.conflicts().all_conflicts().into_iter().collect();
            ensure(encoded == main, || format!("knowledge base {i}: ontology encoding changes the conflicts"))?;
        }
        checks += 1;
        for kind in RepairKind::ALL {
            ensure(optimal(kb, kind) == oracle::brute_optimal(kb, kind).map_err(|e| e.to_string())?, || {
                format!("knowledge base {i}: {kind:?} repairs differ")
            })?;
            checks += 1;
        }
        let fw = kb_to_psetaf(kb).psetaf.reduce();
        for sem in [Semantics::Grounded, Semantics::Complete, Semantics::Preferred, Semantics::Stable] {
            let main: BTreeSet<_> = extensions(&fw, sem).map_err(|e| e.to_string())?.into_iter().collect();
            ensure(main == oracle::brute_extensions(&fw, sem).map_err(|e| e.to_string())?, || {
                format!("knowledge base {i}: {sem} extensions differ")
            })?;
            checks += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in 0..CORPUS {
        let n = rng.gen_range(1..=10);
        let attacks = rng.gen_range(0..=2 * n);
        let f = oracle::random_setaf(&mut rng, n, attacks, 3);
        for sem in [Semantics::Grounded, Semantics::Complete, Semantics::Preferred, Semantics::Stable] {
            let main: BTreeSet<_> = extensions(&f, sem).map_err(|e| e.to_string())?.into_iter().collect();
            ensure(main == oracle::brute_extensions(&f, sem).map_err(|e| e.to_string())?, || {
                format!("framework {t}: {sem} extensions differ")
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} comparisons, 0 mismatches"))
}

fn main() {
    let corpus = validated_corpus();
    let criteria: Vec<Criterion> = vec![
        ("zoo example reproduced", Box::new(zoo_example)),
        ("C within G within P within S", Box::new(|| chain(&corpus))),
        ("Pareto-optimal repairs are the stable extensions", Box::new(|| pareto_is_stable(&corpus))),
        ("coherence results", Box::new(|| coherence(&corpus))),
        ("Elect within grounded within Pareto intersection", Box::new(|| sandwich(&corpus))),
        ("logic programs agree with the grounded extension", Box::new(|| wfs(&corpus))),
        ("partial preorder repair", Box::new(partial_preorders)),
        ("global repair checking gadget", Box::new(gadgets)),
        ("score-structured priorities collapse the families", Box::new(|| score_collapse(&corpus))),
        ("brute-force oracles agree", Box::new(|| oracle_agreement(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_owned()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
