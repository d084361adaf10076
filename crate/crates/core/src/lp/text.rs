use super::{Atom, Program, Rule, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Quoted(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '%' => break,
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            '.' => {
                out.push(Tok::Dot);
                i += 1;
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                out.push(Tok::If);
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(Error::parse(lineno, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some('n') => s.push('\n'),
                                Some(&e) => s.push(e),
                                None => return Err(Error::parse(lineno, "dangling escape")),
                            }
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Quoted(s));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::parse(lineno, format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.next() == Some(t) {
            Ok(())
        } else {
            Err(Error::parse(self.line, format!("expected {what}")))
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.next() {
            Some(Tok::Quoted(s)) => Ok(Term::Const(s)),
            Some(Tok::Ident(s)) => {
                let first = s.chars().next().expect("non-empty identifier");
                if first.is_uppercase() || first == '_' {
                    Ok(Term::Var(s))
                } else {
                    Ok(Term::Const(s))
                }
            }
            _ => Err(Error::parse(self.line, "expected a term")),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let predicate = match self.next() {
            Some(Tok::Ident(s)) if s != "not" => s,
            _ => return Err(Error::parse(self.line, "expected a predicate")),
        };
        let mut terms = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            loop {
                terms.push(self.term()?);
                match self.next() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RParen) => break,
                    _ => return Err(Error::parse(self.line, "expected `,` or `)`")),
                }
            }
        }
        Ok(Atom { predicate, terms })
    }

    fn rule(&mut self) -> Result<Rule> {
        let head = self.atom()?;
        let mut rule = Rule::fact(head);
        if self.peek() == Some(&Tok::If) {
            self.next();
            loop {
                if self.peek() == Some(&Tok::Ident("not".into()))
                    && matches!(self.toks.get(self.pos + 1), Some(Tok::Ident(_)))
                {
                    self.next();
                    rule.neg.push(self.atom()?);
                } else {
                    rule.pos.push(self.atom()?);
                }
                if self.peek() == Some(&Tok::Comma) {
                    self.next();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`.` at the end of the rule")?;
        Ok(rule)
    }
}

/// Parses one rule per line: `head :- a, not b.`; `%` starts a comment.
pub fn parse_program(text: &str) -> Result<Program> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line, i + 1)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser { toks, pos: 0, line: i + 1 };
        let rule = p.rule()?;
        if p.pos != p.toks.len() {
            return Err(Error::parse(i + 1, "trailing input after the rule"));
        }
        if !rule.is_safe() {
            return Err(Error::UnsafeRule(rule.to_string()));
        }
        rules.push(rule);
    }
    Ok(Program { rules })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let text = "acc(X) :- arg(X), not def(X).\narg(a).\nw(\"Big Name\", 3).\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_unsafe_rules() {
        assert!(matches!(parse_program("p(X) :- not q(X)."), Err(Error::UnsafeRule(_))));
    }

    #[test]
    fn reports_line_numbers() {
        match parse_program("a.\nb :- .\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
