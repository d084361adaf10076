//! Text formats for knowledge bases, queries, argumentation frameworks and preorders.

mod kbfile;
mod preorder;
mod query;
mod setaf;

pub use kbfile::{parse_kb, serialize_kb};
pub use preorder::{parse_preorder, serialize_preorder};
pub use query::{parse_queries, serialize_query};
pub use setaf::{parse_setaf, serialize_setaf};

use crate::error::{Error, Result};

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn ident(line: usize, s: &str, what: &str) -> Result<String> {
    let s = s.trim();
    if is_ident(s) {
        Ok(s.to_owned())
    } else {
        Err(Error::parse(line, format!("expected {what}, found `{s}`")))
    }
}

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Splits `P(a, b)` into the predicate and its trimmed arguments.
pub(crate) fn call(line: usize, s: &str) -> Result<(String, Vec<String>)> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| Error::parse(line, format!("expected `P(...)`, found `{s}`")))?;
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::parse(line, format!("missing `)` in `{s}`")))?;
    let predicate = ident(line, &s[..open], "a predicate name")?;
    let args = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').map(|a| a.trim().to_owned()).collect() };
    Ok((predicate, args))
}
