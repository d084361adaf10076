use std::fmt::Write;

use super::{content, ident};
use crate::error::{Error, Result};
use crate::kb::ABox;
use crate::semantics::PartialPreorder;

/// Parses `a >= b` lines over the facts of `abox` into the preorder they generate.
pub fn parse_preorder(text: &str, abox: &ABox) -> Result<PartialPreorder> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = content(raw);
        if text.is_empty() {
            continue;
        }
        let (a, b) = text.split_once(">=").ok_or_else(|| Error::parse(line, "expected `id >= id`"))?;
        let fact = |s: &str| {
            let name = ident(line, s, "a fact identifier")?;
            abox.id_of(&name).ok_or(Error::Undeclared { line, name })
        };
        pairs.push((fact(a)?, fact(b)?));
    }
    PartialPreorder::generated_by(abox.len(), pairs)
}

/// Writes the non-reflexive pairs of a preorder.
pub fn serialize_preorder(p: &PartialPreorder, abox: &ABox) -> String {
    let mut out = String::new();
    for (a, b) in p.pairs().filter(|(a, b)| a != b) {
        let _ = writeln!(out, "{} >= {}", abox.get(a).id, abox.get(b).id);
    }
    out
}
