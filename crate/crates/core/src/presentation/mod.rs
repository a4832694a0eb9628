//! Finite presentations, small-cancellation checks, Dehn's algorithm, the
//! central-extension word problem, a BFS norm oracle and the quasigeodesic
//! audit.

mod audit;
mod bfs;
mod central;
mod dehn;

pub use audit::{quasigeodesic_audit, AuditOutcome, AuditReport};
pub use bfs::{bfs_norm, bfs_norm_letters, Ball, BfsConfig, NormResult};
pub use central::{word_problem_central_ext, CentralExtSpec, CentralVerdict, ExtShape};
pub use dehn::{dehn_reduce, dehn_reduce_letters, DehnRelators, DehnStep, DehnTrace};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::words::{cyclic_reduce, max_piece, star_equivalent, Alphabet, Expr, RleWord};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub lambda: Option<BigRational>,
    /// Extra header lines (`dims:`, `family ...`, `target:`), kept verbatim.
    pub meta: Vec<String>,
    pub relators: Vec<Expr>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Expr>) -> Presentation {
        Presentation { alphabet, lambda: None, meta: Vec::new(), relators }
    }

    pub fn from_words(alphabet: Alphabet, words: &[RleWord]) -> Presentation {
        Presentation::new(alphabet, words.iter().map(Expr::from_word).collect())
    }

    /// Parses words from text, one relator per entry.
    pub fn from_strs(symbols: &[&str], relators: &[&str]) -> Result<Presentation> {
        let alphabet = Alphabet::new(symbols.iter().copied())?;
        let rels = relators.iter().map(|r| alphabet.parse_expr(r)).collect::<Result<Vec<_>>>()?;
        Ok(Presentation::new(alphabet, rels))
    }

    pub fn with_lambda(mut self, lambda: BigRational) -> Presentation {
        self.lambda = Some(lambda);
        self
    }

    /// Reduced relator words.
    pub fn words(&self) -> Result<Vec<RleWord>> {
        self.relators.iter().map(Expr::reduce).collect()
    }

    pub fn parse(text: &str) -> Result<Presentation> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty presentation".into()))?;
        let syms =
            head.strip_prefix("alphabet:").ok_or_else(|| Error::Parse("first line must be `alphabet: ...`".into()))?;
        let alphabet = Alphabet::new(syms.split_whitespace())?;
        let mut p = Presentation::new(alphabet, Vec::new());
        for line in lines {
            let t = line.trim();
            if let Some(l) = t.strip_prefix("lambda:") {
                p.lambda = Some(parse_rational(l.trim())?);
            } else if t.starts_with("dims:") || t.starts_with("family ") || t.starts_with("target:") {
                p.meta.push(t.to_string());
            } else {
                p.relators.push(p.alphabet.parse_expr(t)?);
            }
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "alphabet: {}", self.alphabet.symbols().join(" ")).unwrap();
        if let Some(l) = &self.lambda {
            writeln!(out, "lambda: {l}").unwrap();
        }
        for m in &self.meta {
            writeln!(out, "{m}").unwrap();
        }
        for r in &self.relators {
            writeln!(out, "{}", self.alphabet.format_expr(r)).unwrap();
        }
        out
    }

    /// Relators cyclically reduced and pairwise not star-equivalent.
    pub fn structure_report(&self) -> Result<Report> {
        let words = self.words()?;
        let mut rep = Report::new("presentation structure");
        for (i, w) in words.iter().enumerate() {
            rep.check(format!("relator {i} cyclically reduced"), w.is_cyclically_reduced() && !w.is_empty(), "");
        }
        let mut minimal = true;
        let mut detail = String::new();
        'outer: for i in 0..words.len() {
            for j in i + 1..words.len() {
                if star_equivalent(&cyclic_reduce(&words[i]).0, &cyclic_reduce(&words[j]).0) {
                    minimal = false;
                    detail = format!("relators {i} and {j} are star-equivalent");
                    break 'outer;
                }
            }
        }
        rep.check("cyclically minimal", minimal, detail);
        Ok(rep)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (BigInt, BigInt) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Outcome of a C'(λ) sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPrimeReport {
    pub holds: bool,
    /// Largest `piece / min(|u|,|v|)` seen.
    pub max_ratio: BigRational,
    pub worst_pair: Option<(usize, usize)>,
    pub pairs_checked: usize,
}

/// Checks C'(λ) over all unordered relator pairs, self-pairs included,
/// stopping after `pair_bound` pairs if given.
pub fn check_cprime(p: &Presentation, lambda: &BigRational, pair_bound: Option<usize>) -> Result<CPrimeReport> {
    let words = p.words()?;
    for (i, w) in words.iter().enumerate() {
        if !w.is_cyclically_reduced() {
            return Err(Error::Precondition(format!("relator {i} is not cyclically reduced")));
        }
    }
    let mut max_ratio = BigRational::from_integer(0.into());
    let mut worst = None;
    let mut holds = true;
    let mut count = 0;
    'outer: for i in 0..words.len() {
        for j in i..words.len() {
            if pair_bound.is_some_and(|b| count >= b) {
                break 'outer;
            }
            count += 1;
            let piece = max_piece(&words[i], &words[j])?;
            let min = words[i].len().min(words[j].len()).clone();
            if min == 0u32.into() {
                continue;
            }
            let ratio = BigRational::new(piece.length.into(), min.into());
            if &ratio >= lambda {
                holds = false;
            }
            if ratio > max_ratio || worst.is_none() {
                max_ratio = ratio;
                worst = Some((i, j));
            }
        }
    }
    Ok(CPrimeReport { holds, max_ratio, worst_pair: worst, pairs_checked: count })
}
