use std::collections::BTreeSet;

use super::{ground, GroundAtom, GroundProgram, Program};
use crate::error::Result;
use crate::limits::Limits;

/// Truth value in a three-valued interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    Unknown,
    False,
}

/// A three-valued model; atoms outside `true` and `unknown` are false.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThreeValuedModel {
    true_atoms: BTreeSet<GroundAtom>,
    unknown_atoms: BTreeSet<GroundAtom>,
    base: BTreeSet<GroundAtom>,
}

impl ThreeValuedModel {
    pub fn value(&self, atom: &GroundAtom) -> Truth {
        if self.true_atoms.contains(atom) {
            Truth::True
        } else if self.unknown_atoms.contains(atom) {
            Truth::Unknown
        } else {
            Truth::False
        }
    }

    pub fn is_true(&self, atom: &GroundAtom) -> bool {
        self.true_atoms.contains(atom)
    }

    pub fn true_atoms(&self) -> &BTreeSet<GroundAtom> {
        &self.true_atoms
    }

    pub fn unknown_atoms(&self) -> &BTreeSet<GroundAtom> {
        &self.unknown_atoms
    }

    /// False atoms among those occurring in the relevant ground program.
    pub fn false_atoms(&self) -> BTreeSet<GroundAtom> {
        self.base.iter().filter(|a| self.value(a) == Truth::False).cloned().collect()
    }

    /// Arguments of the true atoms of a unary predicate.
    pub fn true_unary(&self, predicate: &str) -> BTreeSet<String> {
        self.true_atoms
            .iter()
            .filter(|a| a.predicate == predicate && a.args.len() == 1)
            .map(|a| a.args[0].clone())
            .collect()
    }

    /// Whether no atom is unknown.
    pub fn is_total(&self) -> bool {
        self.unknown_atoms.is_empty()
    }
}

fn to_set(gp: &GroundProgram, truth: &[bool]) -> BTreeSet<GroundAtom> {
    truth.iter().enumerate().filter(|(_, &t)| t).map(|(i, _)| gp.atom(i as u32).clone()).collect()
}

fn alternate(gp: &GroundProgram) -> Vec<Vec<bool>> {
    let all = 0..gp.rules.len();
    let mut trace = vec![vec![false; gp.atom_count()]];
    loop {
        let next = gp.least_model(all.clone(), trace.last().expect("non-empty"));
        trace.push(next);
        let i = trace.len() - 1;
        if i >= 2 && i % 2 == 0 && trace[i] == trace[i - 2] {
            return trace;
        }
    }
}

/// The sequence `I_0 = ∅, I_{i+1} = mm(Π|I_i)` up to the first repeated even element.
pub fn alternating_trace(program: &Program) -> Result<Vec<BTreeSet<GroundAtom>>> {
    let gp = ground(program, Limits::default().max_ground_atoms)?;
    Ok(alternate(&gp).iter().map(|t| to_set(&gp, t)).collect())
}

/// The well-founded model, by the alternating fixpoint.
pub fn well_founded_model(program: &Program) -> Result<ThreeValuedModel> {
    well_founded_model_with_budget(program, Limits::default().max_ground_atoms)
}

pub fn well_founded_model_with_budget(program: &Program, max_atoms: usize) -> Result<ThreeValuedModel> {
    let gp = ground(program, max_atoms)?;
    let trace = alternate(&gp);
    let under = &trace[trace.len() - 1];
    let over = &trace[trace.len() - 2];
    let true_atoms = to_set(&gp, under);
    let unknown_atoms: BTreeSet<GroundAtom> = (0..gp.atom_count())
        .filter(|&i| over[i] && !under[i])
        .map(|i| gp.atom(i as u32).clone())
        .collect();
    let base = (0..gp.atom_count()).map(|i| gp.atom(i as u32).clone()).collect();
    Ok(ThreeValuedModel { true_atoms, unknown_atoms, base })
}
