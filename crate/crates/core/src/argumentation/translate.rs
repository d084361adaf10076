use std::collections::BTreeMap;

use super::{ArgSet, Attack, Psetaf, Setaf};
use crate::kb::{FactId, FactSet, ValidatedKb};

/// The framework of a knowledge base together with the argument-to-fact mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbFramework {
    pub psetaf: Psetaf,
    facts: Vec<FactId>,
}

impl KbFramework {
    pub fn fact(&self, arg: usize) -> FactId {
        self.facts[arg]
    }

    pub fn facts_of(&self, set: &ArgSet) -> FactSet {
        set.iter().map(|&a| self.facts[a]).collect()
    }

    pub fn args_of(&self, set: &FactSet) -> ArgSet {
        let pos: BTreeMap<FactId, usize> = self.facts.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        set.iter().filter_map(|f| pos.get(f).copied()).collect()
    }
}

/// One argument per active fact, ordered by identifier; each conflict `C` and member `a`
/// give the attack `C \ {a} ↝ a`; the preference is the priority relation.
pub fn kb_to_psetaf(kb: &ValidatedKb) -> KbFramework {
    let facts = kb.ordered_active();
    let pos: BTreeMap<FactId, usize> = facts.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut attacks = Vec::new();
    for edge in kb.conflicts().edges() {
        for &a in edge {
            attacks.push(Attack::new(edge.iter().filter(|&&b| b != a).map(|b| pos[b]), pos[&a]));
        }
    }
    let names = facts.iter().map(|&f| kb.name(f).to_owned()).collect();
    let setaf = Setaf::new(names, attacks).expect("attacks over active facts");
    let preference: Vec<(usize, usize)> = kb.priority().iter().map(|(a, b)| (pos[&a], pos[&b])).collect();
    let psetaf = Psetaf::new(setaf, preference).expect("validated priority is acyclic");
    KbFramework { psetaf, facts }
}
