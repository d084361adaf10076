use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{brute_conflicts, brute_extensions, brute_optimal, brute_repairs, random_kb, random_setaf, KbParams, PriorityStyle};
use crate::argumentation::{extensions, Semantics};
use crate::error::Result;
use crate::kb::{KnowledgeBase, ValidatedKb};
use crate::repairs::{check_repair, enumerate_optimal, RepairKind};

/// Outcome of [`verify`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Parameters of trial `i` of a verification run.
pub(crate) fn trial_params(i: usize) -> KbParams {
    KbParams {
        max_facts: 10,
        hypergraph: i % 2 == 1,
        style: [PriorityStyle::Sparse, PriorityStyle::Transitive, PriorityStyle::Scored][i % 3],
        ..KbParams::default()
    }
}

/// A random knowledge base for which the completion oracle stays small.
pub(crate) fn sample_kb(rng: &mut ChaCha8Rng, params: &KbParams) -> KnowledgeBase {
    loop {
        let kb = random_kb(rng, params);
        let v = ValidatedKb::from_kb(kb.clone()).expect("generated priorities are valid");
        let open = v.conflicts().pairs().iter().filter(|&&(a, b)| !v.priority().relates(a, b)).count();
        if open <= 12 {
            return kb;
        }
    }
}

/// Compares conflicts, the four repair families, the repair checks and the four extension
/// semantics with the brute-force oracles on `trials` random instances.
pub fn verify(trials: usize, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport { trials, ..VerifyReport::default() };
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let kb = sample_kb(&mut rng, &trial_params(i));
        let v = ValidatedKb::from_kb(kb.clone())?;
        let fail = |what: &str| format!("trial {i} (seed {}): {what}", seed.wrapping_add(i as u64));
        let brute: BTreeSet<_> = brute_conflicts(&kb)?.all_conflicts().into_iter().collect();
        let main: BTreeSet<_> = v.conflicts().all_conflicts().into_iter().collect();
        report.checks += 1;
        if brute != main {
            report.failures.push(fail("conflicts differ"));
        }
        for kind in RepairKind::ALL {
            report.checks += 1;
            let main: BTreeSet<_> = enumerate_optimal(&v, kind)?.into_iter().collect();
            let brute = brute_optimal(&v, kind)?;
            if main != brute {
                report.failures.push(fail(&format!("{kind:?} repairs differ")));
            }
            report.checks += 1;
            for r in brute_repairs(&v)? {
                if check_repair(&v, &r, kind)?.holds() != brute.contains(&r) {
                    report.failures.push(fail(&format!("{kind:?} check of {{{}}} differs", v.names(&r).join(" "))));
                    break;
                }
            }
        }
        let n = rng.gen_range(1..=8);
        let attacks = rng.gen_range(0..=2 * n);
        let f = random_setaf(&mut rng, n, attacks, 3);
        for sem in [Semantics::Grounded, Semantics::Complete, Semantics::Preferred, Semantics::Stable] {
            report.checks += 1;
            let main: BTreeSet<_> = extensions(&f, sem)?.into_iter().collect();
            if main != brute_extensions(&f, sem)? {
                report.failures.push(fail(&format!("{sem} extensions differ")));
            }
        }
    }
    Ok(report)
}

/// The seeded random knowledge bases used by [`verify`]: ontology and hypergraph mode
/// alternate and the priority style cycles through sparse, transitive and scored.
pub fn corpus(size: usize, seed: u64) -> Vec<KnowledgeBase> {
    (0..size)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            sample_kb(&mut rng, &trial_params(i))
        })
        .collect()
}
