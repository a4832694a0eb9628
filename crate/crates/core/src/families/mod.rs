//! Relator families `(a^M x^M)^N`, index partitions, and the validators for
//! the hypotheses the central-extension construction places on them.

mod emit;
mod plan;
mod rule;
mod validate;

pub use emit::{config_from_presentation, emit_presentation, Target};
pub use plan::{plan_construction, Recipe};
pub use rule::Rule;
pub use validate::{example_sequences, validate_family_conditions, validate_pq, ConstructionConfig};

use crate::error::{Error, Result};
use crate::words::{RleWord, Run, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use std::fmt;
use std::ops::Range;

/// A partition parameter: a positive integer or the `∞` marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn parse(s: &str) -> Result<Dim> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Dim::Infinite),
            t => match t.parse::<u64>() {
                Ok(v) if v >= 1 => Ok(Dim::Finite(v)),
                _ => Err(Error::Parse(format!("expected a positive integer or `inf`, got `{t}`"))),
            },
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(v) => Some(v),
            Dim::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Dim::Infinite
    }

    /// `self < other` with `∞` as the largest value.
    pub fn lt(self, other: Dim) -> bool {
        match (self, other) {
            (Dim::Finite(a), Dim::Finite(b)) => a < b,
            (Dim::Finite(_), Dim::Infinite) => true,
            (Dim::Infinite, _) => false,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(v) => write!(f, "{v}"),
            Dim::Infinite => f.write_str("inf"),
        }
    }
}

/// The block `P_(m,j)`.
pub fn partition_block(m: Dim, j: u64) -> Range<u64> {
    match m {
        Dim::Finite(m) => j * m..(j + 1) * m,
        Dim::Infinite => j * j..(j + 1) * (j + 1),
    }
}

/// The `j` with `i ∈ P_(m,j)`.
pub fn block_index(m: Dim, i: u64) -> u64 {
    match m {
        Dim::Finite(m) => i / m,
        Dim::Infinite => i.sqrt(),
    }
}

/// `(m × s)_i`.
pub fn inflate_at<T>(m: Dim, s: impl Fn(u64) -> T, i: u64) -> T {
    s(block_index(m, i))
}

/// An integer sequence given by a closed-form rule or an explicit list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seq {
    Rule(Rule),
    List(Vec<BigInt>),
}

impl Seq {
    pub fn rule(src: &str) -> Result<Seq> {
        Ok(Seq::Rule(Rule::parse(src)?))
    }

    /// A rule, or `[v0,v1,...]` for an explicit list.
    pub fn parse(src: &str) -> Result<Seq> {
        let t = src.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let vals = inner
                .split(',')
                .map(|v| v.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad list entry `{v}`"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Seq::List(vals));
        }
        Seq::rule(t)
    }

    /// Value at index `idx`, binding it to `var` alongside `ctx`.
    pub fn at(&self, var: &str, idx: u64, ctx: &[(&str, BigInt)]) -> Result<BigInt> {
        match self {
            Seq::List(v) => v
                .get(idx as usize)
                .cloned()
                .ok_or_else(|| Error::InvalidConfig(format!("explicit list has no entry {idx}"))),
            Seq::Rule(r) => {
                let mut vars: Vec<(&str, BigInt)> = ctx.to_vec();
                vars.push((var, BigInt::from(idx)));
                r.eval_int(&vars)
            }
        }
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self, Seq::Rule(_))
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seq::Rule(r) => write!(f, "{r}"),
            Seq::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `u_i = (a^{m_i} x^{m_i})^{n_i}`.
    L { mi: Seq, ni: Seq },
    /// `u_i = (a^{k^(p_j - r_i)} x^{k^(p_j - r_i)})^{k^(r_i + 1)}` for `i ∈ P_(part,j)`.
    Technical { part: Dim, p: Seq },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub kind: FamilyKind,
    /// Indices of the two letters in the ambient alphabet.
    pub syms: [usize; 2],
    pub k: u64,
    pub ell: Seq,
    pub truncation: usize,
    /// Values of the rule variables `m` and `n`.
    pub dims: (Dim, Dim),
}

impl FamilySpec {
    pub(crate) fn ctx(&self) -> Vec<(&'static str, BigInt)> {
        let mut v = vec![("k", BigInt::from(self.k))];
        if let Dim::Finite(m) = self.dims.0 {
            v.push(("m", BigInt::from(m)));
        }
        if let Dim::Finite(n) = self.dims.1 {
            v.push(("n", BigInt::from(n)));
        }
        v
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.truncation {
            return Err(Error::OutOfRange { index: i, bound: self.truncation });
        }
        Ok(())
    }

    /// `(inner exponent, repetitions)` of the `i`-th word.
    pub fn shape(&self, i: usize) -> Result<(BigUint, BigUint)> {
        self.check_index(i)?;
        let ctx = self.ctx();
        let positive = |v: BigInt, what: &str| -> Result<BigUint> {
            if v.is_positive() {
                Ok(v.magnitude().clone())
            } else {
                Err(Error::InvalidConfig(format!("{what} must be positive at i={i}, got {v}")))
            }
        };
        match &self.kind {
            FamilyKind::L { mi, ni } => {
                let m = positive(mi.at("i", i as u64, &ctx)?, "m_i")?;
                let n = positive(ni.at("i", i as u64, &ctx)?, "n_i")?;
                Ok((m, n))
            }
            FamilyKind::Technical { part, p } => {
                let j = block_index(*part, i as u64);
                let r = i as u64 - partition_block(*part, j).start;
                let pj = p.at("j", j, &ctx)?;
                let e = pj.clone() - BigInt::from(r);
                let e = e.to_u32().ok_or_else(|| {
                    Error::InvalidConfig(format!("p_{j} = {pj} is smaller than r_{i} = {r} or too large"))
                })?;
                let k = BigUint::from(self.k);
                Ok((k.pow(e), k.pow(r as u32 + 1)))
            }
        }
    }

    pub fn word(&self, i: usize) -> Result<RleWord> {
        let (m, n) = self.shape(i)?;
        let [a, x] = self.syms;
        RleWord::block_power(&[Run::new(a, Sign::Pos, m.clone()), Run::new(x, Sign::Pos, m)], &n)
    }

    pub fn ell(&self, i: usize) -> Result<BigInt> {
        self.ell.at("i", i as u64, &self.ctx())
    }

    /// `p_j` for technical families.
    pub fn p(&self, j: u64) -> Result<BigInt> {
        match &self.kind {
            FamilyKind::Technical { p, .. } => p.at("j", j, &self.ctx()),
            FamilyKind::L { .. } => Err(Error::InvalidConfig("L families have no p_j".into())),
        }
    }

    pub fn part(&self) -> Option<Dim> {
        match &self.kind {
            FamilyKind::Technical { part, .. } => Some(*part),
            FamilyKind::L { .. } => None,
        }
    }
}

/// The `i`-th word of a family.
pub fn gen_word(spec: &FamilySpec, i: usize) -> Result<RleWord> {
    spec.word(i)
}
