//! Prioritized knowledge bases: TBox, ABox, priority relation and validation.

mod priority;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub use priority::{completions, is_transitive_priority, score_structured, transitive_closure};
pub use validate::{validate_kb, ValidatedKb};

/// Index of an assertion in its ABox.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactId(u32);

impl FactId {
    pub fn from_index(index: usize) -> Self {
        FactId(u32::try_from(index).expect("fact index overflow"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of assertions.
pub type FactSet = BTreeSet<FactId>;

/// A role name or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleExpr {
    pub name: String,
    pub inverse: bool,
}

impl RoleExpr {
    pub fn named(name: impl Into<String>) -> Self {
        RoleExpr { name: name.into(), inverse: false }
    }

    pub fn inverse_of(name: impl Into<String>) -> Self {
        RoleExpr { name: name.into(), inverse: true }
    }

    /// The inverse role expression.
    pub fn inv(&self) -> Self {
        RoleExpr { name: self.name.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for RoleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.inverse {
            f.write_str("-")?;
        }
        Ok(())
    }
}

/// A basic concept: a concept name or an unqualified existential restriction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicConcept {
    Name(String),
    Exists(RoleExpr),
}

impl BasicConcept {
    pub fn name(name: impl Into<String>) -> Self {
        BasicConcept::Name(name.into())
    }

    pub fn exists(role: RoleExpr) -> Self {
        BasicConcept::Exists(role)
    }
}

impl fmt::Display for BasicConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicConcept::Name(n) => f.write_str(n),
            BasicConcept::Exists(r) => write!(f, "exists {r}"),
        }
    }
}

/// A TBox axiom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `B1 & ... & Bn <= C` or `B1 & ... & Bn <= not C`.
    Concept { lhs: Vec<BasicConcept>, rhs: BasicConcept, negated: bool },
    /// `S <= Q` or `S <= not Q`.
    Role { lhs: RoleExpr, rhs: RoleExpr, negated: bool },
}

impl Axiom {
    pub fn inclusion(lhs: Vec<BasicConcept>, rhs: BasicConcept) -> Self {
        Axiom::Concept { lhs, rhs, negated: false }
    }

    pub fn disjoint(lhs: Vec<BasicConcept>, rhs: BasicConcept) -> Self {
        Axiom::Concept { lhs, rhs, negated: true }
    }

    pub fn role_inclusion(lhs: RoleExpr, rhs: RoleExpr) -> Self {
        Axiom::Role { lhs, rhs, negated: false }
    }

    pub fn role_disjoint(lhs: RoleExpr, rhs: RoleExpr) -> Self {
        Axiom::Role { lhs, rhs, negated: true }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Axiom::Concept { negated, .. } | Axiom::Role { negated, .. } => *negated,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lhs, rhs, negated) = match self {
            Axiom::Concept { lhs, rhs, negated } => {
                let lhs: Vec<String> = lhs.iter().map(ToString::to_string).collect();
                (lhs.join(" & "), rhs.to_string(), *negated)
            }
            Axiom::Role { lhs, rhs, negated } => (lhs.to_string(), rhs.to_string(), *negated),
        };
        write!(f, "{lhs} <= {}{rhs}", if negated { "not " } else { "" })
    }
}

/// Which DL-Lite dialect a TBox is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Dialect {
    /// Single basic concept on the left, no role axioms.
    Core,
    /// Conjunctions on the left and role axioms allowed.
    #[default]
    Horn,
}

/// A TBox.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TBox {
    dialect: Dialect,
    axioms: Vec<Axiom>,
}

impl TBox {
    pub fn new(dialect: Dialect, axioms: Vec<Axiom>) -> Result<Self> {
        for ax in &axioms {
            match ax {
                Axiom::Concept { lhs, .. } if lhs.is_empty() => {
                    return Err(Error::InvalidTBox(format!("empty left-hand side in `{ax}`")))
                }
                Axiom::Concept { lhs, .. } if dialect == Dialect::Core && lhs.len() > 1 => {
                    return Err(Error::InvalidTBox(format!("conjunction in core dialect: `{ax}`")))
                }
                Axiom::Role { .. } if dialect == Dialect::Core => {
                    return Err(Error::InvalidTBox(format!("role axiom in core dialect: `{ax}`")))
                }
                _ => {}
            }
        }
        Ok(TBox { dialect, axioms })
    }

    /// A horn TBox.
    pub fn horn(axioms: Vec<Axiom>) -> Result<Self> {
        TBox::new(Dialect::Horn, axioms)
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Concept and role names occurring in the axioms.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        let add_concept = |sig: &mut Signature, b: &BasicConcept| match b {
            BasicConcept::Name(n) => {
                sig.concepts.insert(n.clone());
            }
            BasicConcept::Exists(r) => {
                sig.roles.insert(r.name.clone());
            }
        };
        for ax in &self.axioms {
            match ax {
                Axiom::Concept { lhs, rhs, .. } => {
                    for b in lhs {
                        add_concept(&mut sig, b);
                    }
                    add_concept(&mut sig, rhs);
                }
                Axiom::Role { lhs, rhs, .. } => {
                    sig.roles.insert(lhs.name.clone());
                    sig.roles.insert(rhs.name.clone());
                }
            }
        }
        sig
    }
}

/// Concept and role names of a knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl Signature {
    pub fn merge(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
    }
}

/// Arguments of a ground assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Args {
    Unary(String),
    Binary(String, String),
}

impl Args {
    pub fn as_slice(&self) -> Vec<&str> {
        match self {
            Args::Unary(a) => vec![a],
            Args::Binary(a, b) => vec![a, b],
        }
    }
}

/// A ground concept or role assertion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactAtom {
    pub predicate: String,
    pub args: Args,
}

impl FactAtom {
    pub fn concept(predicate: impl Into<String>, ind: impl Into<String>) -> Self {
        FactAtom { predicate: predicate.into(), args: Args::Unary(ind.into()) }
    }

    pub fn role(predicate: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        FactAtom { predicate: predicate.into(), args: Args::Binary(a.into(), b.into()) }
    }

    pub fn is_role(&self) -> bool {
        matches!(self.args, Args::Binary(..))
    }
}

impl fmt::Display for FactAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.args {
            Args::Unary(a) => write!(f, "{}({a})", self.predicate),
            Args::Binary(a, b) => write!(f, "{}({a}, {b})", self.predicate),
        }
    }
}

/// An ABox element: an identifier and, except for bare hypergraph facts, its atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub id: String,
    pub atom: Option<FactAtom>,
}

impl Assertion {
    pub fn new(id: impl Into<String>, atom: FactAtom) -> Self {
        Assertion { id: id.into(), atom: Some(atom) }
    }

    pub fn bare(id: impl Into<String>) -> Self {
        Assertion { id: id.into(), atom: None }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.atom {
            Some(atom) => write!(f, "{}: {atom}", self.id),
            None => f.write_str(&self.id),
        }
    }
}

/// A finite set of assertions with unique identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ABox {
    facts: Vec<Assertion>,
    by_id: BTreeMap<String, FactId>,
}

impl ABox {
    pub fn new(facts: Vec<Assertion>) -> Result<Self> {
        let mut by_id = BTreeMap::new();
        let mut atoms = BTreeSet::new();
        for (i, fact) in facts.iter().enumerate() {
            if by_id.insert(fact.id.clone(), FactId::from_index(i)).is_some() {
                return Err(Error::DuplicateAssertion(fact.id.clone()));
            }
            if let Some(atom) = &fact.atom {
                if !atoms.insert(atom) {
                    return Err(Error::DuplicateAssertion(atom.to_string()));
                }
            }
        }
        Ok(ABox { facts, by_id })
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn get(&self, id: FactId) -> &Assertion {
        &self.facts[id.index()]
    }

    pub fn id_of(&self, name: &str) -> Option<FactId> {
        self.by_id.get(name).copied()
    }

    /// Finds the assertion carrying `atom`.
    pub fn find_atom(&self, atom: &FactAtom) -> Option<FactId> {
        self.iter().find(|(_, a)| a.atom.as_ref() == Some(atom)).map(|(id, _)| id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (FactId, &Assertion)> {
        self.facts.iter().enumerate().map(|(i, a)| (FactId::from_index(i), a))
    }

    pub fn all(&self) -> FactSet {
        (0..self.len()).map(FactId::from_index).collect()
    }

    /// Individuals occurring in the assertions.
    pub fn individuals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for fact in &self.facts {
            if let Some(atom) = &fact.atom {
                out.extend(atom.args.as_slice().into_iter().map(str::to_owned));
            }
        }
        out
    }

    /// Identifiers of `set`, sorted.
    pub fn names(&self, set: &FactSet) -> Vec<String> {
        let mut names: Vec<String> = set.iter().map(|&f| self.get(f).id.clone()).collect();
        names.sort();
        names
    }

    /// Resolves identifiers to a fact set.
    pub fn resolve<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<FactSet> {
        names
            .into_iter()
            .map(|n| self.id_of(n).ok_or_else(|| Error::NotASubset(n.to_owned())))
            .collect()
    }
}

/// A binary relation over assertions, `(a, b)` meaning `a` is preferred to `b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PriorityRelation {
    pairs: BTreeSet<(FactId, FactId)>,
}

impl PriorityRelation {
    pub fn new(pairs: impl IntoIterator<Item = (FactId, FactId)>) -> Self {
        PriorityRelation { pairs: pairs.into_iter().collect() }
    }

    pub fn insert(&mut self, higher: FactId, lower: FactId) -> bool {
        self.pairs.insert((higher, lower))
    }

    pub fn prefers(&self, higher: FactId, lower: FactId) -> bool {
        self.pairs.contains(&(higher, lower))
    }

    /// Whether the two facts are ordered either way.
    pub fn relates(&self, a: FactId, b: FactId) -> bool {
        self.prefers(a, b) || self.prefers(b, a)
    }

    pub fn iter(&self) -> impl Iterator<Item = (FactId, FactId)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Where the conflicts of a knowledge base come from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum KbMode {
    /// Conflicts are computed from the TBox.
    #[default]
    Ontology,
    /// Conflicts are given directly as a hypergraph.
    Hypergraph { conflicts: Vec<FactSet> },
}

/// A prioritized knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnowledgeBase {
    pub signature: Signature,
    pub tbox: TBox,
    pub abox: ABox,
    pub priority: PriorityRelation,
    pub mode: KbMode,
}

impl KnowledgeBase {
    /// An ontology-mode knowledge base; the signature is collected from the TBox and ABox.
    pub fn new(tbox: TBox, abox: ABox, priority: PriorityRelation) -> Self {
        let mut signature = tbox.signature();
        for (_, fact) in abox.iter() {
            if let Some(atom) = &fact.atom {
                if atom.is_role() {
                    signature.roles.insert(atom.predicate.clone());
                } else {
                    signature.concepts.insert(atom.predicate.clone());
                }
            }
        }
        KnowledgeBase { signature, tbox, abox, priority, mode: KbMode::Ontology }
    }

    /// A knowledge base whose conflicts are given directly.
    ///
    /// Every conflict must have at least two elements and the family must be an antichain.
    pub fn hypergraph(abox: ABox, conflicts: Vec<FactSet>, priority: PriorityRelation) -> Result<Self> {
        for (i, c) in conflicts.iter().enumerate() {
            if c.len() < 2 {
                return Err(Error::InvalidConflicts(format!("conflict {} has fewer than two facts", i + 1)));
            }
            if let Some(f) = c.iter().find(|f| f.index() >= abox.len()) {
                return Err(Error::InvalidConflicts(format!("unknown fact index {}", f.index())));
            }
            for (j, d) in conflicts.iter().enumerate() {
                if i != j && d.is_subset(c) && (d != c || j < i) {
                    return Err(Error::InvalidConflicts(format!(
                        "conflict {{{}}} is not minimal",
                        abox.names(c).join(" ")
                    )));
                }
            }
        }
        let mut kb = KnowledgeBase::new(TBox::default(), abox, priority);
        kb.mode = KbMode::Hypergraph { conflicts };
        Ok(kb)
    }

    pub fn is_hypergraph(&self) -> bool {
        matches!(self.mode, KbMode::Hypergraph { .. })
    }
}
