//! Subset, Pareto, global and completion-optimal repairs.

mod check;
mod enumerate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kb::{FactId, FactSet, ValidatedKb};

pub use check::check_repair;
pub use enumerate::{enumerate_optimal, optimal_repairs, repairs, uniqueness, RepairIter};

/// A repair, as a set of assertions.
pub type Repair = FactSet;

/// Which optimality notion a repair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepairKind {
    /// Plain maximal consistent subsets.
    Subset,
    Pareto,
    Global,
    Completion,
}

impl RepairKind {
    pub const ALL: [RepairKind; 4] = [RepairKind::Subset, RepairKind::Pareto, RepairKind::Global, RepairKind::Completion];

    pub fn letter(self) -> char {
        match self {
            RepairKind::Subset => 'S',
            RepairKind::Pareto => 'P',
            RepairKind::Global => 'G',
            RepairKind::Completion => 'C',
        }
    }
}

impl fmt::Display for RepairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for RepairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "subset" => Ok(RepairKind::Subset),
            "p" | "pareto" => Ok(RepairKind::Pareto),
            "g" | "global" => Ok(RepairKind::Global),
            "c" | "completion" => Ok(RepairKind::Completion),
            _ => Err(Error::UnknownName { what: "repair kind", value: s.to_owned() }),
        }
    }
}

/// Whether an improvement is a Pareto or a global one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Pareto,
    Global,
}

/// A consistent set that improves on a candidate repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImprovementWitness {
    pub improved: FactSet,
    pub entering: FactSet,
    pub leaving: FactSet,
    pub flavor: Flavor,
}

/// Why a candidate is not an optimal repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The candidate contains this conflict.
    Inconsistent(FactSet),
    /// This fact can be added without creating a conflict.
    NotMaximal(FactId),
    /// The candidate can be improved.
    Improvement(ImprovementWitness),
    /// The greedy procedure that favours the candidate ends in this repair instead.
    GreedyDiverged(FactSet),
}

/// Outcome of a repair check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairCheck {
    pub refutation: Option<Refutation>,
}

impl RepairCheck {
    pub fn holds(&self) -> bool {
        self.refutation.is_none()
    }

    pub fn witness(&self) -> Option<&ImprovementWitness> {
        match &self.refutation {
            Some(Refutation::Improvement(w)) => Some(w),
            _ => None,
        }
    }
}

/// Sorts sets by their sorted identifier lists.
pub(crate) fn sort_sets(kb: &ValidatedKb, sets: &mut [FactSet]) {
    sets.sort_by_cached_key(|s| kb.names(s));
}

/// Whether some fact of `entering` is preferred to `fact`.
pub(crate) fn dominated_by(kb: &ValidatedKb, entering: &FactSet, fact: FactId) -> bool {
    entering.iter().any(|&b| kb.prefers(b, fact))
}
