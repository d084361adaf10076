use super::{ArgSet, Semantics, Setaf};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Arguments attacked by `set`.
fn attacked_by(f: &Setaf, set: &ArgSet) -> ArgSet {
    f.attacks().iter().filter(|a| a.source.is_subset(set)).map(|a| a.target).collect()
}

/// The characteristic function: arguments all of whose attacks are counter-attacked by `set`.
pub fn gamma(f: &Setaf, set: &ArgSet) -> ArgSet {
    let beaten = attacked_by(f, set);
    (0..f.len())
        .filter(|&a| f.attacks_on(a).all(|att| att.source.iter().any(|s| beaten.contains(s))))
        .collect()
}

/// The grounded extension.
pub fn grounded(f: &Setaf) -> ArgSet {
    let mut set = ArgSet::new();
    loop {
        let next = gamma(f, &set);
        if next == set {
            return set;
        }
        set = next;
    }
}

/// `Γ` applied `d` times to the empty set.
pub fn grounded_approx(f: &Setaf, d: usize) -> ArgSet {
    let mut set = ArgSet::new();
    for _ in 0..d {
        set = gamma(f, &set);
    }
    set
}

/// Bitmask view of a framework for the exhaustive searches.
struct Masks {
    n: usize,
    attacks: Vec<(u64, usize)>,
    on: Vec<Vec<u64>>,
}

impl Masks {
    fn new(f: &Setaf) -> Self {
        let attacks: Vec<(u64, usize)> =
            f.attacks().iter().map(|a| (a.source.iter().fold(0u64, |m, &s| m | 1 << s), a.target)).collect();
        let mut on = vec![Vec::new(); f.len()];
        for &(m, t) in &attacks {
            on[t].push(m);
        }
        Masks { n: f.len(), attacks, on }
    }

    fn beaten(&self, set: u64) -> u64 {
        self.attacks.iter().filter(|(m, _)| m & set == *m).fold(0, |acc, (_, t)| acc | 1 << t)
    }

    fn conflict_free(&self, set: u64) -> bool {
        self.beaten(set) & set == 0
    }

    fn gamma(&self, set: u64) -> u64 {
        let beaten = self.beaten(set);
        (0..self.n).filter(|&a| self.on[a].iter().all(|m| m & beaten != 0)).fold(0, |acc, a| acc | 1 << a)
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Conflict-free sets, pruned as soon as a conflict appears.
    fn conflict_free_sets(&self, out: &mut Vec<u64>) {
        fn go(m: &Masks, i: usize, set: u64, out: &mut Vec<u64>) {
            if i == m.n {
                out.push(set);
                return;
            }
            let with = set | 1 << i;
            if m.conflict_free(with) {
                go(m, i + 1, with, out);
            }
            go(m, i + 1, set, out);
        }
        go(self, 0, 0, out);
    }
}

fn to_set(mask: u64) -> ArgSet {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Extensions under the given semantics, sorted lexicographically by index lists.
pub fn extensions(f: &Setaf, sem: Semantics) -> Result<Vec<ArgSet>> {
    extensions_with_limits(f, sem, &Limits::default())
}

pub fn extensions_with_limits(f: &Setaf, sem: Semantics, limits: &Limits) -> Result<Vec<ArgSet>> {
    if sem == Semantics::Grounded {
        return Ok(vec![grounded(f)]);
    }
    limits.check_arguments(f.len())?;
    if f.len() > 64 {
        return Err(Error::TooLarge { what: "framework", size: f.len(), limit: 64 });
    }
    let m = Masks::new(f);
    let mut cf = Vec::new();
    m.conflict_free_sets(&mut cf);
    let mut out: Vec<u64> = match sem {
        Semantics::Grounded => unreachable!(),
        Semantics::Complete => cf.into_iter().filter(|&s| m.gamma(s) == s).collect(),
        Semantics::Stable => cf.into_iter().filter(|&s| m.beaten(s) == m.full() & !s).collect(),
        Semantics::Preferred => {
            let adm: Vec<u64> = cf.into_iter().filter(|&s| m.gamma(s) & s == s).collect();
            adm.iter().copied().filter(|&s| !adm.iter().any(|&t| t != s && t & s == s)).collect()
        }
    };
    out.sort_by_key(|&s| to_set(s).into_iter().collect::<Vec<_>>());
    Ok(out.into_iter().map(to_set).collect())
}

/// Outcome of a coherence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coherence {
    pub coherent: bool,
    /// The lexicographically smallest preferred extension that is not stable.
    pub counterexample: Option<ArgSet>,
}

/// Whether preferred and stable extensions coincide.
pub fn is_coherent(f: &Setaf) -> Result<Coherence> {
    let preferred = extensions(f, Semantics::Preferred)?;
    let stable = extensions(f, Semantics::Stable)?;
    let counterexample = preferred.into_iter().find(|p| !stable.contains(p));
    Ok(Coherence { coherent: counterexample.is_none(), counterexample })
}
