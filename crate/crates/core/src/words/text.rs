//! Text grammar for words and formal products.
//!
//! A line is a whitespace-separated list of runs `a`, `a^3`, `x^-2`, with
//! `( ... )^n` grouping a run list raised to a power. `e` is the empty word.
//! Formatting then parsing reproduces the value exactly.

use super::{push_signed, Alphabet, RleWord, Run, Sign};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// `runs^exp`, where `runs` is the primitive period of a freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub runs: Vec<Run>,
    pub exp: BigInt,
}

impl Factor {
    pub fn len(&self) -> BigUint {
        let l: BigUint = self.runs.iter().map(|r| &r.exp).sum();
        l * self.exp.magnitude()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn to_word(&self) -> Result<RleWord> {
        RleWord::from_runs(&self.runs).pow(&self.exp)
    }
}

/// A formal, unreduced product of powers. Its length is the sum of the
/// factor lengths; [`Expr::reduce`] computes the free reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Expr {
    factors: Vec<Factor>,
}

impl Expr {
    pub fn new() -> Expr {
        Expr::default()
    }

    pub fn from_word(w: &RleWord) -> Expr {
        let mut e = Expr::new();
        e.push_word(w);
        e
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn formal_len(&self) -> BigUint {
        self.factors.iter().map(Factor::len).sum()
    }

    pub fn push_word(&mut self, w: &RleWord) {
        self.push_power(w.period(), &BigInt::from(w.reps().clone()));
    }

    /// Appends `(runs)^exp`. Adjacent unit-exponent factors are merged and
    /// freely reduced; blocks keep their exponent.
    pub fn push_power(&mut self, runs: &[Run], exp: &BigInt) {
        let base = RleWord::from_runs(runs);
        if base.is_empty() || exp.is_zero() {
            return;
        }
        let exp = exp * BigInt::from(base.reps().clone());
        let mut period = base.period().to_vec();
        if period.len() == 1 {
            let r = &mut period[0];
            r.exp *= exp.magnitude();
            if exp.is_negative() {
                r.sign = r.sign.flip();
            }
            self.push_unit(period);
        } else if exp.is_one() {
            self.push_unit(period);
        } else {
            self.factors.push(Factor { runs: period, exp });
        }
    }

    fn push_unit(&mut self, runs: Vec<Run>) {
        let mut stack = match self.factors.last() {
            Some(f) if f.exp.is_one() => self.factors.pop().expect("last").runs,
            _ => Vec::new(),
        };
        for r in runs {
            push_signed(&mut stack, r.sym, r.signed());
        }
        if stack.is_empty() {
            return;
        }
        let w = RleWord::canonical(stack);
        if w.reps().is_one() {
            self.factors.push(Factor { runs: w.period().to_vec(), exp: BigInt::one() });
        } else {
            self.factors.push(Factor { runs: w.period().to_vec(), exp: BigInt::from(w.reps().clone()) });
        }
    }

    pub fn push_expr(&mut self, other: &Expr) {
        for f in &other.factors {
            self.push_power(&f.runs, &f.exp);
        }
    }

    pub fn inverse(&self) -> Expr {
        let mut e = Expr::new();
        for f in self.factors.iter().rev() {
            e.push_power(&f.runs, &-&f.exp);
        }
        e
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &RleWord, b: &RleWord) -> Expr {
        let mut e = Expr::from_word(a);
        e.push_word(b);
        for w in [a, b] {
            e.push_power(w.period(), &-BigInt::from(w.reps().clone()));
        }
        e
    }

    pub fn product(words: &[RleWord]) -> Expr {
        let mut e = Expr::new();
        for w in words {
            e.push_word(w);
        }
        e
    }

    /// Free reduction. A single factor stays symbolic; otherwise the factors
    /// are expanded run by run.
    pub fn reduce(&self) -> Result<RleWord> {
        match self.factors.len() {
            0 => return Ok(RleWord::empty()),
            1 => return self.factors[0].to_word(),
            _ => {}
        }
        let mut stack = Vec::new();
        let mut count = BigUint::zero();
        for f in &self.factors {
            count += BigUint::from(f.runs.len()) * f.exp.magnitude();
            if count > BigUint::from(super::EXPAND_LIMIT) {
                return Err(Error::TooLarge(format!("product with more than {} runs", super::EXPAND_LIMIT)));
            }
            for r in f.to_word()?.explicit_runs()? {
                push_signed(&mut stack, r.sym, r.signed());
            }
        }
        Ok(RleWord::canonical(stack))
    }
}

fn format_runs(alphabet: &Alphabet, runs: &[Run], out: &mut String) {
    for (i, r) in runs.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(alphabet.name(r.sym));
        let neg = r.sign == Sign::Neg;
        if neg || !r.exp.is_one() {
            out.push('^');
            if neg {
                out.push('-');
            }
            out.push_str(&r.exp.to_string());
        }
    }
}

impl Alphabet {
    pub fn format_word(&self, w: &RleWord) -> String {
        if w.is_empty() {
            return "e".into();
        }
        let mut out = String::new();
        if w.reps().is_one() {
            format_runs(self, w.period(), &mut out);
        } else {
            out.push('(');
            format_runs(self, w.period(), &mut out);
            out.push_str(")^");
            out.push_str(&w.reps().to_string());
        }
        out
    }

    pub fn format_expr(&self, e: &Expr) -> String {
        if e.is_empty() {
            return "e".into();
        }
        let mut out = String::new();
        for (i, f) in e.factors.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            if f.exp.is_one() {
                format_runs(self, &f.runs, &mut out);
            } else {
                out.push('(');
                format_runs(self, &f.runs, &mut out);
                out.push_str(")^");
                out.push_str(&f.exp.to_string());
            }
        }
        out
    }

    pub fn parse_word(&self, s: &str) -> Result<RleWord> {
        self.parse_expr(s)?.reduce()
    }

    pub fn parse_expr(&self, s: &str) -> Result<Expr> {
        let trimmed = s.trim();
        if trimmed == "e" {
            return Ok(Expr::new());
        }
        if trimmed.is_empty() {
            return Err(Error::Parse("empty word (write `e` for the identity)".into()));
        }
        let mut p = Scanner { s: trimmed.as_bytes(), pos: 0 };
        let mut expr = Expr::new();
        let mut pending: Vec<Run> = Vec::new();
        loop {
            p.skip_ws();
            match p.peek() {
                None => break,
                Some(b'(') => {
                    p.pos += 1;
                    flush(&mut expr, &mut pending);
                    let mut inner = Vec::new();
                    loop {
                        p.skip_ws();
                        match p.peek() {
                            Some(b')') => {
                                p.pos += 1;
                                break;
                            }
                            None => return Err(Error::Parse("unclosed `(`".into())),
                            _ => inner.push(p.run(self)?),
                        }
                    }
                    let exp = if p.peek() == Some(b'^') {
                        p.pos += 1;
                        p.int()?
                    } else {
                        BigInt::one()
                    };
                    let inner: Vec<Run> = inner.into_iter().flatten().collect();
                    expr.push_power(&inner, &exp);
                }
                Some(b')') => return Err(Error::Parse("unbalanced `)`".into())),
                _ => {
                    if let Some(r) = p.run(self)? {
                        pending.push(r);
                    }
                }
            }
        }
        flush(&mut expr, &mut pending);
        Ok(expr)
    }
}

fn flush(expr: &mut Expr, pending: &mut Vec<Run>) {
    if !pending.is_empty() {
        expr.push_power(pending, &BigInt::one());
        pending.clear();
    }
}

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Scanner<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<&str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a symbol at byte {start}")));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn int(&mut self) -> Result<BigInt> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        t.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad exponent `{t}`")))
    }

    /// One run token; `None` for a zero exponent.
    fn run(&mut self, alphabet: &Alphabet) -> Result<Option<Run>> {
        let name = self.ident()?.to_string();
        let sym = alphabet.lookup(&name)?;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.int()?
        } else {
            BigInt::one()
        };
        if let Some(c) = self.peek() {
            if !(c.is_ascii_whitespace() || c == b'(' || c == b')') {
                return Err(Error::Parse(format!("unexpected `{}`", c as char)));
            }
        }
        if exp.is_zero() {
            return Ok(None);
        }
        let sign = if exp.is_negative() { Sign::Neg } else { Sign::Pos };
        Ok(Some(Run { sym, sign, exp: exp.magnitude().clone() }))
    }
}
