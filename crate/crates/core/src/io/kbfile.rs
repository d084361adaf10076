use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::{call, content, ident};
use crate::error::{Error, Result};
use crate::kb::{
    ABox, Assertion, Axiom, BasicConcept, Dialect, FactAtom, FactSet, KbMode, KnowledgeBase, PriorityRelation,
    RoleExpr, Signature, TBox,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Concepts,
    Roles,
    TBox,
    ABox,
    Facts,
    Conflicts,
    Pref,
}

fn section(line: usize, header: &str) -> Result<(Section, Option<Dialect>)> {
    let inner = &header[1..header.len() - 1];
    let mut words = inner.split_whitespace();
    let name = words.next().unwrap_or("");
    let s = match name {
        "concepts" => Section::Concepts,
        "roles" => Section::Roles,
        "tbox" => Section::TBox,
        "abox" => Section::ABox,
        "facts" => Section::Facts,
        "conflicts" => Section::Conflicts,
        "pref" => Section::Pref,
        _ => return Err(Error::parse(line, format!("unknown section `[{inner}]`"))),
    };
    let dialect = match (s, words.next()) {
        (Section::TBox, None) => Some(Dialect::Horn),
        (Section::TBox, Some("horn")) => Some(Dialect::Horn),
        (Section::TBox, Some("core")) => Some(Dialect::Core),
        (_, None) => None,
        (_, Some(w)) => return Err(Error::parse(line, format!("unexpected `{w}` in section header"))),
    };
    if words.next().is_some() {
        return Err(Error::parse(line, "unexpected text in section header"));
    }
    Ok((s, dialect))
}

struct Reader {
    sig: Signature,
    dialect: Dialect,
    axioms: Vec<Axiom>,
    facts: Vec<Assertion>,
    conflicts: Vec<(usize, Vec<String>)>,
    pref: Vec<(usize, String, String)>,
    hypergraph: bool,
}

impl Reader {
    fn role(&self, line: usize, s: &str) -> Result<RoleExpr> {
        let s = s.trim();
        let (name, inverse) = match s.strip_suffix('-') {
            Some(n) => (n, true),
            None => (s, false),
        };
        let name = ident(line, name, "a role name")?;
        if !self.sig.roles.contains(&name) {
            return Err(Error::Undeclared { line, name });
        }
        Ok(RoleExpr { name, inverse })
    }

    fn basic(&self, line: usize, s: &str) -> Result<BasicConcept> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("exists ") {
            return Ok(BasicConcept::Exists(self.role(line, rest)?));
        }
        let name = ident(line, s, "a basic concept")?;
        if !self.sig.concepts.contains(&name) {
            return Err(Error::Undeclared { line, name });
        }
        Ok(BasicConcept::Name(name))
    }

    fn is_role_expr(&self, s: &str) -> bool {
        let s = s.trim();
        self.sig.roles.contains(s.strip_suffix('-').unwrap_or(s))
    }

    fn axiom(&self, line: usize, text: &str) -> Result<Axiom> {
        let parts: Vec<&str> = text.split("<=").collect();
        if parts.len() != 2 {
            return Err(Error::parse(line, "expected exactly one `<=`"));
        }
        let (lhs, rhs) = (parts[0].trim(), parts[1].trim());
        let (negated, rhs) = match rhs.strip_prefix("not ") {
            Some(r) => (true, r.trim()),
            None => (false, rhs),
        };
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::parse(line, "empty side in axiom"));
        }
        if !lhs.contains('&') && self.is_role_expr(lhs) && self.is_role_expr(rhs) {
            let (l, r) = (self.role(line, lhs)?, self.role(line, rhs)?);
            return Ok(Axiom::Role { lhs: l, rhs: r, negated });
        }
        let lhs = lhs.split('&').map(|b| self.basic(line, b)).collect::<Result<Vec<_>>>()?;
        let rhs = self.basic(line, rhs)?;
        Ok(Axiom::Concept { lhs, rhs, negated })
    }

    fn assertion(&self, line: usize, text: &str) -> Result<Assertion> {
        let (id, atom) = text.split_once(':').ok_or_else(|| Error::parse(line, "expected `id: Atom`"))?;
        let id = ident(line, id, "an assertion identifier")?;
        let (predicate, args) = call(line, atom)?;
        let args = args.iter().map(|a| ident(line, a, "an individual")).collect::<Result<Vec<_>>>()?;
        let atom = match args.as_slice() {
            [a] if self.sig.concepts.contains(&predicate) => FactAtom::concept(predicate, a),
            [a, b] if self.sig.roles.contains(&predicate) => FactAtom::role(predicate, a, b),
            [_] | [_, _] if !self.sig.concepts.contains(&predicate) && !self.sig.roles.contains(&predicate) => {
                return Err(Error::Undeclared { line, name: predicate })
            }
            _ => return Err(Error::parse(line, format!("wrong number of arguments for `{predicate}`"))),
        };
        Ok(Assertion::new(id, atom))
    }

    fn declare(&mut self, line: usize, text: &str, roles: bool) -> Result<()> {
        for w in text.split_whitespace() {
            let w = ident(line, w, "a name")?;
            let clash = if roles { self.sig.concepts.contains(&w) } else { self.sig.roles.contains(&w) };
            if clash {
                return Err(Error::parse(line, format!("`{w}` is declared both as a concept and a role")));
            }
            if roles {
                self.sig.roles.insert(w);
            } else {
                self.sig.concepts.insert(w);
            }
        }
        Ok(())
    }
}

/// Parses a knowledge-base file.
///
/// ```text
/// [concepts]
/// Boa Snake
/// [roles]
/// Eat
/// [tbox]
/// Boa <= Snake
/// [abox]
/// b1: Boa(a)
/// [pref]
/// b1 > b2
/// ```
///
/// Hypergraph files use `[facts]`, `[conflicts]` (`{a b} {b c}`) and `[pref]` instead.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    let mut r = Reader {
        sig: Signature::default(),
        dialect: Dialect::Horn,
        axioms: Vec::new(),
        facts: Vec::new(),
        conflicts: Vec::new(),
        pref: Vec::new(),
        hypergraph: false,
    };
    let mut current: Option<Section> = None;
    let mut seen: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = content(raw);
        if text.is_empty() {
            continue;
        }
        if text.starts_with('[') && text.ends_with(']') {
            let (s, dialect) = section(line, text)?;
            if seen.last().is_some_and(|&last| last >= s) {
                return Err(Error::parse(line, "sections must appear once each, in the fixed order"));
            }
            let hyper = matches!(s, Section::Facts | Section::Conflicts);
            let onto = matches!(s, Section::Concepts | Section::Roles | Section::TBox | Section::ABox);
            if (hyper && seen.iter().any(|s| matches!(s, Section::Concepts | Section::Roles | Section::TBox | Section::ABox)))
                || (onto && r.hypergraph)
            {
                return Err(Error::parse(line, "ontology and hypergraph sections cannot be mixed"));
            }
            r.hypergraph |= hyper;
            if let Some(d) = dialect {
                r.dialect = d;
            }
            seen.push(s);
            current = Some(s);
            continue;
        }
        match current {
            None => return Err(Error::parse(line, "content before the first section")),
            Some(Section::Concepts) => r.declare(line, text, false)?,
            Some(Section::Roles) => r.declare(line, text, true)?,
            Some(Section::TBox) => {
                let ax = r.axiom(line, text)?;
                r.axioms.push(ax);
            }
            Some(Section::ABox) => {
                let a = r.assertion(line, text)?;
                r.facts.push(a);
            }
            Some(Section::Facts) => {
                for w in text.split_whitespace() {
                    r.facts.push(Assertion::bare(ident(line, w, "a fact identifier")?));
                }
            }
            Some(Section::Conflicts) => {
                let mut rest = text;
                while !rest.is_empty() {
                    let body = rest.strip_prefix('{').ok_or_else(|| Error::parse(line, "expected `{`"))?;
                    let (inner, after) = body.split_once('}').ok_or_else(|| Error::parse(line, "missing `}`"))?;
                    r.conflicts.push((line, inner.split_whitespace().map(str::to_owned).collect()));
                    rest = after.trim_start();
                }
            }
            Some(Section::Pref) => {
                let (a, b) = text.split_once('>').ok_or_else(|| Error::parse(line, "expected `id > id`"))?;
                let a = ident(line, a, "a fact identifier")?;
                let b = ident(line, b, "a fact identifier")?;
                r.pref.push((line, a, b));
            }
        }
    }
    let tbox = TBox::new(r.dialect, r.axioms)?;
    let abox = ABox::new(r.facts)?;
    let resolve = |line: usize, name: &str| abox.id_of(name).ok_or_else(|| Error::Undeclared { line, name: name.to_owned() });
    let mut priority = PriorityRelation::default();
    for (line, a, b) in &r.pref {
        priority.insert(resolve(*line, a)?, resolve(*line, b)?);
    }
    if r.hypergraph {
        let mut conflicts = Vec::new();
        for (line, names) in &r.conflicts {
            let set = names.iter().map(|n| resolve(*line, n)).collect::<Result<FactSet>>()?;
            if set.len() != names.len() {
                return Err(Error::parse(*line, "repeated fact in a conflict"));
            }
            conflicts.push(set);
        }
        return KnowledgeBase::hypergraph(abox, conflicts, priority);
    }
    let mut kb = KnowledgeBase::new(tbox, abox, priority);
    kb.signature = r.sig;
    Ok(kb)
}

/// Writes a knowledge base in the format read by [`parse_kb`].
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    let names: BTreeMap<usize, &str> = kb.abox.iter().map(|(id, a)| (id.index(), a.id.as_str())).collect();
    match &kb.mode {
        KbMode::Hypergraph { conflicts } => {
            out.push_str("[facts]\n");
            for (_, a) in kb.abox.iter() {
                let _ = writeln!(out, "{}", a.id);
            }
            out.push_str("[conflicts]\n");
            for c in conflicts {
                let ids: Vec<&str> = c.iter().map(|f| names[&f.index()]).collect();
                let _ = writeln!(out, "{{{}}}", ids.join(" "));
            }
        }
        KbMode::Ontology => {
            let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "[concepts]\n{}", join(&kb.signature.concepts));
            let _ = writeln!(out, "[roles]\n{}", join(&kb.signature.roles));
            let dialect = match kb.tbox.dialect() {
                Dialect::Core => "core",
                Dialect::Horn => "horn",
            };
            let _ = writeln!(out, "[tbox {dialect}]");
            for ax in kb.tbox.axioms() {
                let _ = writeln!(out, "{ax}");
            }
            out.push_str("[abox]\n");
            for (_, a) in kb.abox.iter() {
                let _ = writeln!(out, "{a}");
            }
        }
    }
    out.push_str("[pref]\n");
    for (a, b) in kb.priority.iter() {
        let _ = writeln!(out, "{} > {}", names[&a.index()], names[&b.index()]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
[concepts]
Boa Snake Stone
[roles]
Eat EatMeat
[tbox]
Boa <= Snake
EatMeat <= Eat
exists Eat- <= not Stone
Boa & Snake <= not exists EatMeat-
[abox]
b: Boa(a)
e: EatMeat(a, s)
s: Stone(s)
[pref]
e > s
";

    #[test]
    fn reads_ontology_files() {
        let kb = parse_kb(SMALL).unwrap();
        assert_eq!(kb.tbox.len(), 4);
        assert_eq!(kb.abox.len(), 3);
        assert_eq!(kb.priority.len(), 1);
        assert!(matches!(kb.tbox.axioms()[1], Axiom::Role { .. }));
        assert_eq!(parse_kb(&serialize_kb(&kb)).unwrap(), kb);
    }

    #[test]
    fn reads_hypergraph_files() {
        let kb = parse_kb("[facts]\na b c\n[conflicts]\n{a b} {b c}\n[pref]\na > b\n").unwrap();
        match &kb.mode {
            KbMode::Hypergraph { conflicts } => assert_eq!(conflicts.len(), 2),
            KbMode::Ontology => panic!("expected hypergraph mode"),
        }
        assert_eq!(parse_kb(&serialize_kb(&kb)).unwrap(), kb);
    }

    #[test]
    fn reports_the_offending_line() {
        let text = "[concepts]\nBoa Snake\n[tbox]\nBoa <= <= Snake\n";
        assert!(matches!(parse_kb(text), Err(Error::Parse { line: 4, .. })));
        let text = "[concepts]\nBoa\n[tbox]\nBoa <= Snake\n";
        assert!(matches!(parse_kb(text), Err(Error::Undeclared { line: 4, .. })));
        assert!(matches!(parse_kb("[abox]\n[concepts]\n"), Err(Error::Parse { line: 2, .. })));
    }
}
