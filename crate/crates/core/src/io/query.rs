use std::collections::BTreeSet;

use super::{call, content, ident};
use crate::dllite::{Bcq, ConjunctiveQuery, QueryAtom, Term};
use crate::error::{Error, Result};

fn term(line: usize, raw: &str, individuals: &BTreeSet<String>) -> Result<Term> {
    let raw = raw.trim();
    if let Some(inner) = raw.strip_prefix('"').and_then(|r| r.strip_suffix('"')) {
        return Ok(Term::Ind(ident(line, inner, "an individual")?));
    }
    let name = ident(line, raw, "a term")?;
    if individuals.contains(&name) {
        Ok(Term::Ind(name))
    } else {
        Ok(Term::Var(name))
    }
}

/// Parses one query per line: `q(x) :- Eat(a, x), Stone(x)`.
///
/// A term is an individual when it is quoted or names an individual of `individuals`;
/// any other identifier is a variable. A trailing `.` is allowed.
pub fn parse_queries(text: &str, individuals: &BTreeSet<String>) -> Result<Vec<ConjunctiveQuery>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = content(raw);
        if text.is_empty() {
            continue;
        }
        let text = text.strip_suffix('.').unwrap_or(text);
        let (head, body) = text.split_once(":-").ok_or_else(|| Error::parse(line, "expected `head :- body`"))?;
        let head = head.trim();
        let (name, answer_vars) = if head.contains('(') {
            let (name, vars) = call(line, head)?;
            let vars = vars.iter().map(|v| ident(line, v, "an answer variable")).collect::<Result<Vec<_>>>()?;
            (name, vars)
        } else {
            (ident(line, head, "a query name")?, Vec::new())
        };
        if let Some(v) = answer_vars.iter().find(|v| individuals.contains(*v)) {
            return Err(Error::parse(line, format!("answer variable `{v}` is an individual")));
        }
        let mut atoms = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let close = rest.find(')').ok_or_else(|| Error::parse(line, "missing `)`"))?;
            let (predicate, args) = call(line, &rest[..=close])?;
            if args.is_empty() || args.len() > 2 {
                return Err(Error::parse(line, format!("`{predicate}` needs one or two terms")));
            }
            let terms = args.iter().map(|a| term(line, a, individuals)).collect::<Result<Vec<_>>>()?;
            atoms.push(QueryAtom { predicate, terms });
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::parse(line, "dangling `,`"));
                }
            } else if !rest.is_empty() {
                return Err(Error::parse(line, "expected `,` between atoms"));
            }
        }
        if atoms.is_empty() {
            return Err(Error::parse(line, "empty query body"));
        }
        out.push(ConjunctiveQuery { name, answer_vars, body: Bcq::new(atoms) });
    }
    Ok(out)
}

/// Writes a query in the format read by [`parse_queries`]; individuals are quoted.
pub fn serialize_query(q: &ConjunctiveQuery) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn individuals_and_variables() {
        let inds: BTreeSet<String> = ["a".to_owned()].into();
        let qs = parse_queries("q(y) :- Eat(a, y), Stone(\"b\")\nb :- Boa(x).\n", &inds).unwrap();
        assert_eq!(qs.len(), 2);
        assert_eq!(qs[0].answer_vars, vec!["y"]);
        assert_eq!(qs[0].body.atoms[0].terms, vec![Term::Ind("a".into()), Term::Var("y".into())]);
        assert_eq!(qs[0].body.atoms[1].terms, vec![Term::Ind("b".into())]);
        assert!(qs[1].is_boolean());
        for q in &qs {
            assert_eq!(parse_queries(&serialize_query(q), &inds).unwrap(), vec![q.clone()]);
        }
    }

    #[test]
    fn rejects_malformed_queries() {
        let none = BTreeSet::new();
        assert!(parse_queries("q :- ", &none).is_err());
        assert!(parse_queries("q :- A(x) B(x)", &none).is_err());
        assert!(parse_queries("q :- R(x, y, z)", &none).is_err());
    }
}
