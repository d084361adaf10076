//! Normal logic programs: text format, grounding, well-founded and stratified models,
//! and the programs that encode grounded semantics.

mod generate;
mod ground;
mod stratify;
mod text;
mod wfs;

use std::fmt;

pub use generate::{
    gen_gamma_program, gen_kb_program, gen_setaf_program, kb_fact_program, kb_predicate, stratification_depth,
};
pub use ground::{ground, GroundProgram, GroundRule};
pub use stratify::{stratified_model, stratify, Stratification};
pub use text::parse_program;
pub use wfs::{alternating_trace, well_founded_model, well_founded_model_with_budget, ThreeValuedModel, Truth};

/// A term: variables start with an uppercase letter or `_`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(v: impl Into<String>) -> Self {
        Term::Var(v.into())
    }

    pub fn constant(c: impl Into<String>) -> Self {
        Term::Const(c.into())
    }
}

/// An atom `p(t1, ..., tn)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub terms: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, terms: Vec<Term>) -> Self {
        Atom { predicate: predicate.into(), terms }
    }

    /// A ground atom over constants.
    pub fn ground<S: Into<String>>(predicate: impl Into<String>, args: impl IntoIterator<Item = S>) -> Self {
        Atom { predicate: predicate.into(), terms: args.into_iter().map(|a| Term::Const(a.into())).collect() }
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.vars().next().is_none()
    }
}

/// A ground atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new<S: Into<String>>(predicate: impl Into<String>, args: impl IntoIterator<Item = S>) -> Self {
        GroundAtom { predicate: predicate.into(), args: args.into_iter().map(Into::into).collect() }
    }
}

/// A normal rule `head :- pos, not neg`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Atom,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl Rule {
    pub fn new(head: Atom, pos: Vec<Atom>, neg: Vec<Atom>) -> Self {
        Rule { head, pos, neg }
    }

    pub fn fact(head: Atom) -> Self {
        Rule { head, pos: Vec::new(), neg: Vec::new() }
    }

    /// Every head variable occurs in the positive body.
    pub fn is_safe(&self) -> bool {
        self.head.vars().all(|v| self.pos.iter().any(|a| a.vars().any(|w| w == v)))
    }
}

/// A finite set of rules, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> crate::error::Result<Self> {
        if let Some(r) = rules.iter().find(|r| !r.is_safe()) {
            return Err(crate::error::Error::UnsafeRule(r.to_string()));
        }
        Ok(Program { rules })
    }

    pub(crate) fn from_safe(rules: Vec<Rule>) -> Self {
        debug_assert!(rules.iter().all(Rule::is_safe));
        Program { rules }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Appends the rules of another program.
    pub fn extend(&mut self, other: Program) {
        self.rules.extend(other.rules);
    }
}

fn is_plain_constant(c: &str) -> bool {
    let mut chars = c.chars();
    match chars.next() {
        Some(first) if first.is_ascii_lowercase() => chars.all(|ch| ch.is_ascii_alphanumeric() || ch == '_'),
        Some(first) if first.is_ascii_digit() => c.chars().all(|ch| ch.is_ascii_digit()),
        _ => false,
    }
}

fn write_constant(f: &mut fmt::Formatter<'_>, c: &str) -> fmt::Result {
    if is_plain_constant(c) {
        return f.write_str(c);
    }
    f.write_str("\"")?;
    for ch in c.chars() {
        match ch {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            _ => write!(f, "{ch}")?,
        }
    }
    f.write_str("\"")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write_constant(f, c),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if self.terms.is_empty() {
            return Ok(());
        }
        f.write_str("(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if self.args.is_empty() {
            return Ok(());
        }
        f.write_str("(")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_constant(f, a)?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.pos.is_empty() || !self.neg.is_empty() {
            f.write_str(" :- ")?;
            let body = self.pos.iter().map(ToString::to_string).chain(self.neg.iter().map(|a| format!("not {a}")));
            f.write_str(&body.collect::<Vec<_>>().join(", "))?;
        }
        f.write_str(".")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
