//! Diagram text format:
//!
//! ```text
//! presentation corpus
//! vertices 3
//! outer 0
//! dart 0 1 2 0 a +
//! ```
//!
//! One `dart id twin next origin label dir` line per dart, in id order;
//! `label` is a symbol name or `1`. `outer` names the base dart of the
//! boundary path, whose twin lies on the outer face, or `-` when there are
//! no edges.

use super::diagram::{DartRec, Diagram};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Sign};
use std::fmt::Write as _;

pub fn write_diagram(d: &Diagram, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    writeln!(out, "presentation {}", d.presentation).unwrap();
    writeln!(out, "vertices {}", d.vertices).unwrap();
    match d.base {
        Some(b) => writeln!(out, "outer {b}").unwrap(),
        None => writeln!(out, "outer -").unwrap(),
    }
    for (i, r) in d.darts.iter().enumerate() {
        let label = r.label.map_or("1", |s| alphabet.name(s));
        let dir = if r.label.is_none() || r.dir == Sign::Pos { '+' } else { '-' };
        writeln!(out, "dart {i} {} {} {} {label} {dir}", r.twin, r.next, r.origin).unwrap();
    }
    out
}

/// Parses and structurally validates a diagram; face labels are checked
/// separately against a presentation.
pub fn parse_diagram(text: &str, alphabet: &Alphabet) -> Result<Diagram> {
    let mut name = None;
    let mut vertices = None;
    let mut base = None;
    let mut darts = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let bad = |m: &str| Error::Parse(format!("line {}: {m}", ln + 1));
        let f: Vec<&str> = t.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("bad number `{s}`")));
        match f[0] {
            "presentation" if f.len() == 2 => name = Some(f[1].to_string()),
            "vertices" if f.len() == 2 => vertices = Some(num(f[1])?),
            "outer" if f.len() == 2 => base = Some(if f[1] == "-" { None } else { Some(num(f[1])?) }),
            "dart" if f.len() == 7 => {
                if num(f[1])? != darts.len() {
                    return Err(bad("dart ids must be consecutive from 0"));
                }
                let label = if f[5] == "1" { None } else { Some(alphabet.lookup(f[5])?) };
                let dir = match f[6] {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    o => return Err(bad(&format!("bad direction `{o}`"))),
                };
                if label.is_none() && dir == Sign::Neg {
                    return Err(bad("1-edges carry direction +"));
                }
                darts.push(DartRec { twin: num(f[2])?, next: num(f[3])?, origin: num(f[4])?, label, dir });
            }
            _ => return Err(bad(&format!("unrecognized line `{t}`"))),
        }
    }
    let d = Diagram {
        presentation: name.ok_or_else(|| Error::Parse("missing `presentation` line".into()))?,
        vertices: vertices.ok_or_else(|| Error::Parse("missing `vertices` line".into()))?,
        darts,
        base: base.ok_or_else(|| Error::Parse("missing `outer` line".into()))?,
    };
    let errs = d.structure_errors();
    if !errs.is_empty() {
        return Err(Error::Parse(errs.join("; ")));
    }
    Ok(d)
}
