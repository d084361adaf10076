use std::collections::BTreeSet;

use super::{Attack, Psetaf, Setaf};

/// Which symmetry notions a framework satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SymmetryReport {
    /// No argument attacks a set containing itself.
    pub irreflexive: bool,
    /// Single-source attacks only, symmetric and irreflexive.
    pub symmetric_paf: bool,
    /// Irreflexive, and every attacker of a target is attacked back by a set containing the target.
    pub symm1: bool,
    /// Irreflexive, and swapping any source member with the target gives another attack.
    pub strongly_symmetric: bool,
}

impl SymmetryReport {
    /// Names of the satisfied notions, or `none`.
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.symmetric_paf {
            out.push("symmetric-paf");
        }
        if self.symm1 {
            out.push("symm1");
        }
        if self.strongly_symmetric {
            out.push("strongly-symmetric");
        }
        if out.is_empty() {
            out.push("none");
        }
        out
    }
}

pub fn classify_symmetry(f: &Setaf) -> SymmetryReport {
    let attacks = f.attacks();
    let irreflexive = attacks.iter().all(|a| !a.source.contains(&a.target));
    let symmetric_paf = irreflexive
        && f.is_af()
        && attacks.iter().all(|a| {
            let s = *a.source.first().expect("non-empty source");
            attacks.contains(&Attack::new([a.target], s))
        });
    let symm1 = irreflexive
        && attacks.iter().all(|a| {
            a.source.iter().all(|&alpha| f.attacks_on(alpha).any(|back| back.source.contains(&a.target)))
        });
    let strongly_symmetric = irreflexive
        && attacks.iter().all(|a| {
            a.source.iter().all(|&alpha| {
                let mut swapped = a.source.clone();
                swapped.remove(&alpha);
                swapped.insert(a.target);
                attacks.contains(&Attack { source: swapped, target: alpha })
            })
        });
    SymmetryReport { irreflexive, symmetric_paf, symm1, strongly_symmetric }
}

/// A symmetric framework with preferences whose reduction is `f`, if one exists.
///
/// The attack relation is the symmetric closure of `f` and the preference is the set of
/// one-directional attacks; this works exactly when `f` has no self-attacks and every
/// cycle of `f` contains an attack that is answered.
pub fn recover_symmetric_paf(f: &Setaf) -> Option<Psetaf> {
    if !f.is_af() {
        return None;
    }
    let edges: BTreeSet<(usize, usize)> =
        f.attacks().iter().map(|a| (*a.source.first().expect("non-empty source"), a.target)).collect();
    if edges.iter().any(|&(a, b)| a == b) {
        return None;
    }
    let one_way: Vec<(usize, usize)> = edges.iter().copied().filter(|&(a, b)| !edges.contains(&(b, a))).collect();
    let closure = edges.iter().flat_map(|&(a, b)| [Attack::new([a], b), Attack::new([b], a)]);
    let sym = Setaf::new(f.names().to_vec(), closure).ok()?;
    Psetaf::new(sym, one_way).ok()
}
