use std::collections::BTreeSet;

use orbits::argumentation::{
    classify_symmetry, extensions, grounded, grounded_approx, is_coherent, kb_to_psetaf, recover_symmetric_paf,
    reduce_preferences, ArgSet, Psetaf, Semantics,
};
use orbits::dllite::{is_consistent, Bcq, ConjunctiveQuery, Term};
use orbits::io;
use orbits::kb::{completions, is_transitive_priority, score_structured, KnowledgeBase, PriorityRelation};
use orbits::lp::{
    alternating_trace, gen_kb_program, gen_setaf_program, kb_fact_program, parse_program, stratified_model,
    well_founded_model,
};
use orbits::oracle::{self, KbParams, PriorityStyle};
use orbits::repairs::{check_repair, enumerate_optimal};
use orbits::semantics::{self, entails, intersection, Mode};
use orbits::{FactId, FactSet, RepairKind, ValidatedKb};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(max_facts: usize, hypergraph: bool, style: PriorityStyle) -> KbParams {
    KbParams { max_facts, hypergraph, conflict_density: 0.8, max_arity: 3, priority_density: 0.6, style }
}

fn style(i: u8) -> PriorityStyle {
    [PriorityStyle::Sparse, PriorityStyle::Transitive, PriorityStyle::Scored][i as usize % 3]
}

fn kb(seed: u64, max_facts: usize, hypergraph: bool, s: u8) -> ValidatedKb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = oracle::random_kb(&mut rng, &params(max_facts, hypergraph, style(s)));
    ValidatedKb::from_kb(raw).expect("generated knowledge bases are valid")
}

fn optimal(kb: &ValidatedKb, kind: RepairKind) -> BTreeSet<FactSet> {
    enumerate_optimal(kb, kind).unwrap().into_iter().collect()
}

fn without_priority(kb: &ValidatedKb) -> ValidatedKb {
    kb.with_priority(PriorityRelation::default()).unwrap()
}

fn subsets(all: &FactSet) -> Vec<FactSet> {
    let items: Vec<FactId> = all.iter().copied().collect();
    (0u32..1 << items.len())
        .map(|m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &f)| f).collect())
        .collect()
}

fn queries(kb: &ValidatedKb) -> Vec<Bcq> {
    let mut out = Vec::new();
    for c in ["A", "B", "C", "D", "E"] {
        for ind in ["a", "b"] {
            out.push(Bcq::atom(c, vec![Term::Ind(ind.into())]));
        }
    }
    for r in ["R", "S"] {
        out.push(Bcq::atom(r, vec![Term::Ind("a".into()), Term::Var("y".into())]));
        out.push(Bcq::atom(r, vec![Term::Var("x".into()), Term::Ind("b".into())]));
    }
    let sig = &kb.kb().signature;
    out.retain(|q| q.atoms.iter().all(|a| sig.concepts.contains(&a.predicate) || sig.roles.contains(&a.predicate)));
    out
}

fn settings() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(settings())]

    #[test]
    fn validation_is_idempotent(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 8, hyper, s);
        let again = ValidatedKb::from_kb(v.kb().clone()).unwrap();
        prop_assert_eq!(v, again);
    }

    #[test]
    fn score_assignments_reproduce_the_priority(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 8, hyper, s);
        if let Some(score) = score_structured(&v) {
            prop_assert!(is_transitive_priority(&v));
            for (a, b) in v.conflicts().pairs() {
                prop_assert_eq!(v.prefers(a, b), score[&a] > score[&b]);
                prop_assert_eq!(v.prefers(b, a), score[&b] > score[&a]);
            }
        }
    }

    #[test]
    fn completions_are_total_acyclic_extensions(seed in any::<u64>(), s in 0u8..3) {
        let v = kb(seed, 7, true, s);
        for c in completions(&v, 64) {
            for (a, b) in v.priority().iter() {
                prop_assert!(c.prefers(a, b));
            }
            for (a, b) in v.conflicts().pairs() {
                prop_assert!(c.prefers(a, b) ^ c.prefers(b, a));
            }
            prop_assert!(v.with_priority(c).is_ok(), "completion is cyclic");
        }
    }

    #[test]
    fn consistency_is_covered_by_conflicts(seed in any::<u64>(), s in 0u8..3) {
        let v = kb(seed, 10, false, s);
        let closed = v.closed_tbox().unwrap();
        let all = v.abox().all();
        for sub in subsets(&all) {
            let direct = is_consistent(closed, v.abox(), &sub);
            prop_assert_eq!(direct, v.conflicts().is_consistent(&sub) && sub.is_disjoint(v.removed()));
        }
    }

    #[test]
    fn entailment_is_monotone_in_the_abox(seed in any::<u64>(), s in 0u8..3) {
        let v = kb(seed, 7, false, s);
        let all = v.abox().all();
        for q in queries(&v) {
            for sub in subsets(&all).into_iter().step_by(7) {
                if !v.conflicts().is_consistent(&sub) || !sub.is_disjoint(v.removed()) {
                    continue;
                }
                if semantics::holds_in(&v, &sub, &q).unwrap() {
                    let mut bigger = sub.clone();
                    bigger.extend(all.iter().take(3));
                    if v.conflicts().is_consistent(&bigger) && bigger.is_disjoint(v.removed()) {
                        prop_assert!(semantics::holds_in(&v, &bigger, &q).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn repair_families_form_a_chain(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 9, hyper, s);
        let fam: Vec<_> = RepairKind::ALL.iter().map(|&k| optimal(&v, k)).collect();
        for i in 0..3 {
            prop_assert!(fam[i + 1].is_subset(&fam[i]));
        }
        prop_assert!(!fam[3].is_empty());
    }

    #[test]
    fn empty_priority_collapses_every_kind(seed in any::<u64>(), hyper in any::<bool>()) {
        let v = without_priority(&kb(seed, 8, hyper, 0));
        let rep = optimal(&v, RepairKind::Subset);
        for k in RepairKind::ALL {
            prop_assert_eq!(&optimal(&v, k), &rep);
        }
        let all: Vec<FactSet> = rep.into_iter().collect();
        prop_assert_eq!(semantics::grounded_set(&v), intersection(&all));
    }

    #[test]
    fn score_structured_kbs_collapse(seed in any::<u64>(), hyper in any::<bool>()) {
        let v = kb(seed, 9, hyper, 2);
        if score_structured(&v).is_some() {
            let c = optimal(&v, RepairKind::Completion);
            prop_assert_eq!(&optimal(&v, RepairKind::Global), &c);
            prop_assert_eq!(&optimal(&v, RepairKind::Pareto), &c);
        }
    }

    #[test]
    fn optimal_repairs_pass_their_check(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 8, hyper, s);
        for k in RepairKind::ALL {
            let opt = optimal(&v, k);
            for r in optimal(&v, RepairKind::Subset) {
                let check = check_repair(&v, &r, k).unwrap();
                prop_assert_eq!(check.holds(), opt.contains(&r), "{:?} on {:?}", k, v.names(&r));
            }
        }
    }

    #[test]
    fn pareto_check_matches_brute_force(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 8, hyper, s);
        let brute = oracle::brute_optimal(&v, RepairKind::Pareto).unwrap();
        for sub in subsets(v.active()) {
            prop_assert_eq!(check_repair(&v, &sub, RepairKind::Pareto).unwrap().holds(), brute.contains(&sub));
        }
    }

    #[test]
    fn semantics_ladder(seed in any::<u64>(), s in 0u8..3) {
        let v = kb(seed, 8, false, s);
        for q in queries(&v) {
            for k in RepairKind::ALL {
                let iar = entails(&v, &q, k, Mode::Iar).unwrap();
                let ar = entails(&v, &q, k, Mode::Ar).unwrap();
                let brave = entails(&v, &q, k, Mode::Brave).unwrap();
                prop_assert!(!iar || ar);
                prop_assert!(!ar || brave);
            }
            if semantics::grounded_entails(&v, &q).unwrap() {
                prop_assert!(entails(&v, &q, RepairKind::Pareto, Mode::Iar).unwrap());
            }
        }
    }

    #[test]
    fn grounded_lies_below_pareto_and_above_elect(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 9, hyper, s);
        let g = semantics::grounded_set(&v);
        for r in optimal(&v, RepairKind::Pareto) {
            prop_assert!(g.is_subset(&r));
        }
        prop_assert!(semantics::elect(&v).is_subset(&g));
        let mut prev = FactSet::new();
        for d in 1..=v.abox().len() + 1 {
            let cur = semantics::grounded_approx_set(&v, d);
            prop_assert!(prev.is_subset(&cur) && cur.is_subset(&g));
            prev = cur;
        }
        prop_assert_eq!(prev, g);
    }

    #[test]
    fn pareto_repairs_are_stable_extensions(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 8, hyper, s);
        let fw = kb_to_psetaf(&v);
        let stable: BTreeSet<FactSet> = extensions(&reduce_preferences(&fw.psetaf), Semantics::Stable)
            .unwrap()
            .iter()
            .map(|e| fw.facts_of(e))
            .collect();
        prop_assert_eq!(stable, optimal(&v, RepairKind::Pareto));
    }

    #[test]
    fn consistency_is_conflict_freeness(seed in any::<u64>(), hyper in any::<bool>()) {
        let v = kb(seed, 8, hyper, 0);
        let fw = kb_to_psetaf(&v);
        let f = &fw.psetaf.setaf;
        for sub in subsets(v.active()) {
            let args = fw.args_of(&sub);
            let conflict_free = !f.attacks().iter().any(|a| a.source.is_subset(&args) && args.contains(&a.target));
            prop_assert_eq!(conflict_free, v.conflicts().is_consistent(&sub));
        }
    }

    #[test]
    fn transitive_or_binary_kbs_are_coherent(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let v = kb(seed, 8, hyper, s);
        if is_transitive_priority(&v) || v.conflicts().is_binary() {
            let f = reduce_preferences(&kb_to_psetaf(&v).psetaf);
            prop_assert!(is_coherent(&f).unwrap().coherent);
        }
    }

    #[test]
    fn symmetric_frameworks_are_coherent(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let paf = oracle::random_symmetric_paf(&mut rng, n, 0.4, 0.5);
        let reduced = paf.reduce();
        prop_assert!(is_coherent(&reduced).unwrap().coherent);
        let recovered = recover_symmetric_paf(&reduced).expect("reductions of symmetric PAFs are recognised");
        prop_assert_eq!(reduce_preferences(&recovered), reduced);
        let strong = oracle::random_strongly_symmetric(&mut rng, n, 4, 3);
        prop_assert!(classify_symmetry(&strong).strongly_symmetric);
        prop_assert!(is_coherent(&strong).unwrap().coherent);
        let pref = oracle::random_transitive_preference(&mut rng, n, 0.4);
        let p = Psetaf::new(strong, pref).unwrap();
        prop_assert!(is_coherent(&p.reduce()).unwrap().coherent);
    }

    #[test]
    fn extension_semantics_relate(seed in any::<u64>(), n in 1usize..8, m in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = oracle::random_setaf(&mut rng, n, m, 3);
        let preferred: BTreeSet<ArgSet> = extensions(&f, Semantics::Preferred).unwrap().into_iter().collect();
        for e in extensions(&f, Semantics::Stable).unwrap() {
            prop_assert!(preferred.contains(&e));
        }
        let g = grounded(&f);
        for e in extensions(&f, Semantics::Complete).unwrap() {
            prop_assert!(g.is_subset(&e));
        }
        let mut prev = ArgSet::new();
        for d in 1..=n + 1 {
            let cur = grounded_approx(&f, d);
            prop_assert!(prev.is_subset(&cur));
            prev = cur;
        }
        prop_assert_eq!(prev, g);
    }

    #[test]
    fn setaf_program_computes_grounded(seed in any::<u64>(), n in 1usize..10, m in 0usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = oracle::random_setaf(&mut rng, n, m, 3);
        let model = well_founded_model(&gen_setaf_program(&f)).unwrap();
        let acc: BTreeSet<String> = model.true_unary("acc");
        let expected: BTreeSet<String> = f.set_names(&grounded(&f)).into_iter().collect();
        prop_assert_eq!(acc, expected);
    }

    #[test]
    fn kb_program_computes_grounded(seed in any::<u64>(), s in 0u8..3) {
        let v = kb(seed, 7, false, s);
        let mut program = gen_kb_program(v.closed_tbox().unwrap(), &v.kb().signature);
        program.extend(kb_fact_program(v.kb()));
        let acc = well_founded_model(&program).unwrap().true_unary("acc");
        let expected: BTreeSet<String> = v.names(&semantics::grounded_set(&v)).into_iter().collect();
        prop_assert_eq!(acc, expected);
    }

    #[test]
    fn stratified_programs_have_total_models(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut text = String::new();
        for i in 0..rng.gen_range(1..5) {
            text.push_str(&format!("e(c{i}, c{}).\n", rng.gen_range(0..5)));
        }
        text.push_str("p(X, Y) :- e(X, Y).\np(X, Z) :- p(X, Y), e(Y, Z).\n");
        text.push_str("n(X) :- e(X, Y).\nn(Y) :- e(X, Y).\nq(X, Y) :- n(X), n(Y), not p(X, Y).\n");
        if rng.gen_bool(0.5) {
            text.push_str("r(X) :- n(X), not q(X, X).\n");
        }
        let program = parse_program(&text).unwrap();
        let wfm = well_founded_model(&program).unwrap();
        prop_assert!(wfm.is_total());
        prop_assert_eq!(wfm.true_atoms(), &stratified_model(&program).unwrap());
    }

    #[test]
    fn alternating_trace_is_monotone(seed in any::<u64>(), n in 1usize..8, m in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = oracle::random_setaf(&mut rng, n, m, 2);
        let trace = alternating_trace(&gen_setaf_program(&f)).unwrap();
        for i in 2..trace.len() {
            if i % 2 == 0 {
                prop_assert!(trace[i - 2].is_subset(&trace[i]));
            } else {
                prop_assert!(trace[i].is_subset(&trace[i - 2]));
            }
        }
        for i in (0..trace.len().saturating_sub(1)).step_by(2) {
            prop_assert!(trace[i].is_subset(&trace[i + 1]));
        }
    }

    #[test]
    fn kb_files_round_trip(seed in any::<u64>(), hyper in any::<bool>(), s in 0u8..3) {
        let raw: KnowledgeBase = kb(seed, 10, hyper, s).into_kb();
        let text = io::serialize_kb(&raw);
        prop_assert_eq!(io::parse_kb(&text).unwrap(), raw);
    }

    #[test]
    fn setaf_files_round_trip(seed in any::<u64>(), n in 1usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = oracle::random_symmetric_paf(&mut rng, n, 0.5, 0.4);
        prop_assert_eq!(io::parse_setaf(&io::serialize_setaf(&p)).unwrap(), p);
        let f = Psetaf::new(oracle::random_setaf(&mut rng, n, 6, 3), []).unwrap();
        prop_assert_eq!(io::parse_setaf(&io::serialize_setaf(&f)).unwrap(), f);
    }

    #[test]
    fn preorder_files_round_trip(seed in any::<u64>()) {
        let v = kb(seed, 8, true, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pre = oracle::random_preorder(&mut rng, v.abox().len(), 0.3).unwrap();
        let text = io::serialize_preorder(&pre, v.abox());
        prop_assert_eq!(io::parse_preorder(&text, v.abox()).unwrap(), pre);
    }

    #[test]
    fn programs_round_trip(seed in any::<u64>(), n in 1usize..8, m in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let program = gen_setaf_program(&oracle::random_setaf(&mut rng, n, m, 3));
        prop_assert_eq!(parse_program(&program.to_string()).unwrap(), program);
    }

    #[test]
    fn queries_round_trip(preds in proptest::collection::vec((0usize..4, 0usize..4, 0usize..4), 1..4)) {
        let individuals: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let terms = ["a", "b", "x", "y"];
        let body: Vec<String> = preds
            .iter()
            .map(|&(p, s, t)| match p {
                0 | 1 => format!("{}({})", ["A", "B"][p], terms[s]),
                _ => format!("{}({}, {})", ["R", "S"][p - 2], terms[s], terms[t]),
            })
            .collect();
        let text = format!("q :- {}\n", body.join(", "));
        let parsed: Vec<ConjunctiveQuery> = io::parse_queries(&text, &individuals).unwrap();
        let again = io::parse_queries(&io::serialize_query(&parsed[0]), &individuals).unwrap();
        prop_assert_eq!(again, parsed);
    }
}
