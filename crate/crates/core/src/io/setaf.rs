use std::fmt::Write;

use super::{content, ident};
use crate::argumentation::{Attack, Psetaf, Setaf};
use crate::error::{Error, Result};

fn index(line: usize, s: &str, n: usize) -> Result<usize> {
    let i: usize = s.parse().map_err(|_| Error::parse(line, format!("expected an argument index, found `{s}`")))?;
    if i == 0 || i > n {
        return Err(Error::parse(line, format!("argument index {i} outside 1..{n}")));
    }
    Ok(i - 1)
}

/// Parses `setaf n`, optional `arg i name` lines, `att {i j ...} k` and `pref i j` lines.
/// Indices are 1-based; unnamed arguments are named by their index.
pub fn parse_setaf(text: &str) -> Result<Psetaf> {
    let mut n: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut attacks = Vec::new();
    let mut pref = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = content(raw);
        if text.is_empty() {
            continue;
        }
        let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        let Some(size) = n else {
            if kw != "setaf" {
                return Err(Error::parse(line, "expected the `setaf n` header"));
            }
            let size: usize = rest.parse().map_err(|_| Error::parse(line, "expected the number of arguments"))?;
            n = Some(size);
            names = (1..=size).map(|i| i.to_string()).collect();
            continue;
        };
        match kw {
            "arg" => {
                let (i, name) = rest.split_once(char::is_whitespace).ok_or_else(|| Error::parse(line, "expected `arg i name`"))?;
                names[index(line, i, size)?] = ident(line, name, "an argument name")?;
            }
            "att" => {
                let body = rest.strip_prefix('{').ok_or_else(|| Error::parse(line, "expected `{`"))?;
                let (src, tgt) = body.split_once('}').ok_or_else(|| Error::parse(line, "missing `}`"))?;
                let source = src.split_whitespace().map(|s| index(line, s, size)).collect::<Result<Vec<_>>>()?;
                if source.is_empty() {
                    return Err(Error::parse(line, "attack with an empty source"));
                }
                attacks.push(Attack::new(source, index(line, tgt.trim(), size)?));
            }
            "pref" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = parts.as_slice() else {
                    return Err(Error::parse(line, "expected `pref i j`"));
                };
                pref.push((index(line, a, size)?, index(line, b, size)?));
            }
            "setaf" => return Err(Error::parse(line, "repeated header")),
            _ => return Err(Error::parse(line, format!("unknown line kind `{kw}`"))),
        }
    }
    if n.is_none() {
        return Err(Error::parse(1, "missing the `setaf n` header"));
    }
    Psetaf::new(Setaf::new(names, attacks)?, pref)
}

/// Writes a framework in the format read by [`parse_setaf`].
pub fn serialize_setaf(p: &Psetaf) -> String {
    let f = &p.setaf;
    let mut out = format!("setaf {}\n", f.len());
    for (i, name) in f.names().iter().enumerate() {
        if *name != (i + 1).to_string() {
            let _ = writeln!(out, "arg {} {name}", i + 1);
        }
    }
    for a in f.attacks() {
        let src: Vec<String> = a.source.iter().map(|s| (s + 1).to_string()).collect();
        let _ = writeln!(out, "att {{{}}} {}", src.join(" "), a.target + 1);
    }
    for &(a, b) in p.preference() {
        let _ = writeln!(out, "pref {} {}", a + 1, b + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "setaf 3\narg 2 b\natt {1 2} 3\natt {3} 1\npref 1 3\n";
        let p = parse_setaf(text).unwrap();
        assert_eq!(p.setaf.names(), ["1", "b", "3"]);
        assert_eq!(p.setaf.attacks().len(), 2);
        assert_eq!(serialize_setaf(&p), text);
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(matches!(parse_setaf("setaf 2\natt {3} 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_setaf("setaf 2\natt {} 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_setaf("att {1} 1\n").is_err());
    }
}
