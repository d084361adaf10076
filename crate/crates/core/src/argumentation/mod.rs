//! Argumentation frameworks with collective attacks and preferences.

mod extensions;
mod symmetry;
mod translate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use extensions::{
    extensions, extensions_with_limits, gamma, grounded, grounded_approx, is_coherent, Coherence,
};
pub use symmetry::{classify_symmetry, recover_symmetric_paf, SymmetryReport};
pub use translate::{kb_to_psetaf, KbFramework};

/// A set of arguments, by index.
pub type ArgSet = BTreeSet<usize>;

/// A collective attack `source ↝ target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attack {
    pub source: ArgSet,
    pub target: usize,
}

impl Attack {
    pub fn new(source: impl IntoIterator<Item = usize>, target: usize) -> Self {
        Attack { source: source.into_iter().collect(), target }
    }
}

/// An argumentation framework with collective attacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Setaf {
    names: Vec<String>,
    attacks: BTreeSet<Attack>,
}

impl Setaf {
    /// Arguments named by their 1-based position.
    pub fn numbered(n: usize, attacks: impl IntoIterator<Item = Attack>) -> Result<Self> {
        Setaf::new((1..=n).map(|i| i.to_string()).collect(), attacks)
    }

    pub fn new(names: Vec<String>, attacks: impl IntoIterator<Item = Attack>) -> Result<Self> {
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            return Err(Error::InvalidFramework("duplicate argument name".into()));
        }
        let attacks: BTreeSet<Attack> = attacks.into_iter().collect();
        for a in &attacks {
            if a.source.is_empty() {
                return Err(Error::InvalidFramework("attack with an empty source".into()));
            }
            if a.target >= names.len() || a.source.iter().any(|&s| s >= names.len()) {
                return Err(Error::InvalidFramework("attack mentions an unknown argument".into()));
            }
        }
        Ok(Setaf { names, attacks })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, arg: usize) -> &str {
        &self.names[arg]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn attacks(&self) -> &BTreeSet<Attack> {
        &self.attacks
    }

    pub fn attacks_on(&self, target: usize) -> impl Iterator<Item = &Attack> {
        self.attacks.iter().filter(move |a| a.target == target)
    }

    /// Largest attack source.
    pub fn max_attack_size(&self) -> usize {
        self.attacks.iter().map(|a| a.source.len()).max().unwrap_or(0)
    }

    /// Whether every attack has a single source, i.e. this is a plain framework.
    pub fn is_af(&self) -> bool {
        self.attacks.iter().all(|a| a.source.len() == 1)
    }

    /// All arguments.
    pub fn all(&self) -> ArgSet {
        (0..self.len()).collect()
    }

    /// Sorted names of a set.
    pub fn set_names(&self, set: &ArgSet) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&a| self.names[a].clone()).collect();
        v.sort();
        v
    }
}

/// A framework with collective attacks and a preference relation over arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psetaf {
    pub setaf: Setaf,
    preference: BTreeSet<(usize, usize)>,
}

impl Psetaf {
    /// The preference must be irreflexive and acyclic.
    pub fn new(setaf: Setaf, preference: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let preference: BTreeSet<(usize, usize)> = preference.into_iter().collect();
        let n = setaf.len();
        if preference.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::InvalidFramework("preference mentions an unknown argument".into()));
        }
        let mut indegree = vec![0usize; n];
        for &(_, b) in &preference {
            indegree[b] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &(a, b) in &preference {
                if a == v {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        ready.push(b);
                    }
                }
            }
        }
        if seen != n {
            return Err(Error::InvalidFramework("preference is cyclic".into()));
        }
        Ok(Psetaf { setaf, preference })
    }

    pub fn preference(&self) -> &BTreeSet<(usize, usize)> {
        &self.preference
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.preference.contains(&(a, b))
    }

    /// The framework where an attack `S ↝ a` survives unless `a` is preferred to a member of `S`.
    pub fn reduce(&self) -> Setaf {
        let attacks = self
            .setaf
            .attacks
            .iter()
            .filter(|att| !att.source.iter().any(|&b| self.prefers(att.target, b)))
            .cloned();
        Setaf { names: self.setaf.names.clone(), attacks: attacks.collect() }
    }
}

/// Shorthand for [`Psetaf::reduce`].
pub fn reduce_preferences(p: &Psetaf) -> Setaf {
    p.reduce()
}

/// Extension-based semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Grounded,
    Complete,
    Preferred,
    Stable,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Grounded => "grounded",
            Semantics::Complete => "complete",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        })
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grounded" | "gr" => Ok(Semantics::Grounded),
            "complete" | "co" => Ok(Semantics::Complete),
            "preferred" | "pr" => Ok(Semantics::Preferred),
            "stable" | "st" => Ok(Semantics::Stable),
            _ => Err(Error::UnknownName { what: "semantics", value: s.to_owned() }),
        }
    }
}
