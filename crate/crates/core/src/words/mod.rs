//! Words over a signed alphabet, stored as canonical run sequences with
//! big-integer exponents.
//!
//! A word is either an explicit list of runs or a single block `(P)^N` where
//! `P` is a primitive run sequence whose first and last symbols differ. Every
//! constructor funnels through [`RleWord::canonical`], so two words are equal
//! as group elements of the free group iff they are equal as structs.

mod piece;
mod text;

pub use piece::{check_cprime_pair, max_piece, max_piece_with_power, PieceReport, PieceWitness, PowerPiece};
pub use text::{Expr, Factor};

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Words longer than this are never turned into letter arrays.
pub const DENSE_LIMIT: u64 = 1_000_000;
/// Upper bound on the number of runs an explicit expansion may produce.
pub const EXPAND_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// `1` is reserved for inessential edge labels and `e` for the empty word.
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidAlphabet(format!("bad symbol name `{s}`")));
            }
            if s == "1" || s == "e" {
                return Err(Error::InvalidAlphabet(format!("`{s}` is reserved")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, sym: usize) -> &str {
        &self.symbols[sym]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// Dense letter encoding: `+(sym+1)` or `-(sym+1)`.
pub type Letter = i32;

pub fn letter(sym: usize, sign: Sign) -> Letter {
    (sym as i32 + 1) * sign.as_i32()
}

pub fn letter_sym(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn letter_sign(l: Letter) -> Sign {
    if l > 0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub sym: usize,
    pub sign: Sign,
    pub exp: BigUint,
}

impl Run {
    pub fn new(sym: usize, sign: Sign, exp: impl Into<BigUint>) -> Run {
        Run { sym, sign, exp: exp.into() }
    }

    pub fn signed(&self) -> BigInt {
        let e = BigInt::from(self.exp.clone());
        match self.sign {
            Sign::Pos => e,
            Sign::Neg => -e,
        }
    }

    pub fn inverse(&self) -> Run {
        Run { sym: self.sym, sign: self.sign.flip(), exp: self.exp.clone() }
    }

    pub fn letter(&self) -> Letter {
        letter(self.sym, self.sign)
    }
}

/// An unreduced run `sym^exp` with a signed (possibly zero) exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRun {
    pub sym: usize,
    pub exp: BigInt,
}

impl RawRun {
    pub fn new(sym: usize, exp: impl Into<BigInt>) -> RawRun {
        RawRun { sym, exp: exp.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RleWord {
    period: Vec<Run>,
    reps: BigUint,
    len: BigUint,
}

/// Push `sym^exp` onto a stack of merged runs, cancelling against the top.
fn push_signed(stack: &mut Vec<Run>, sym: usize, exp: BigInt) {
    if exp.is_zero() {
        return;
    }
    if let Some(top) = stack.last_mut() {
        if top.sym == sym {
            let total = top.signed() + exp;
            stack.pop();
            if !total.is_zero() {
                stack.push(run_from_signed(sym, total));
            }
            return;
        }
    }
    stack.push(run_from_signed(sym, exp));
}

fn run_from_signed(sym: usize, e: BigInt) -> Run {
    let sign = if e.is_negative() { Sign::Neg } else { Sign::Pos };
    Run { sym, sign, exp: e.magnitude().clone() }
}

/// Smallest `p` dividing `s.len()` with `s = s[..p]^(n/p)`.
pub(crate) fn primitive_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    if n <= 1 {
        return n;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Position of the first occurrence of `b` inside the cyclic sequence `a`.
pub(crate) fn rotation_offset<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    if n == 0 {
        return Some(0);
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && b[i] != b[k] {
            k = fail[k - 1];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i] = k;
    }
    k = 0;
    for i in 0..(2 * n - 1) {
        let c = &a[i % n];
        while k > 0 && *c != b[k] {
            k = fail[k - 1];
        }
        if *c == b[k] {
            k += 1;
        }
        if k == n {
            return Some(i + 1 - n);
        }
    }
    None
}

impl RleWord {
    pub fn empty() -> RleWord {
        RleWord { period: Vec::new(), reps: BigUint::one(), len: BigUint::zero() }
    }

    /// Builds the canonical form of an already merged run list.
    fn canonical(runs: Vec<Run>) -> RleWord {
        debug_assert!(runs.windows(2).all(|w| w[0].sym != w[1].sym));
        if runs.is_empty() {
            return RleWord::empty();
        }
        let p = primitive_period(&runs);
        let reps = runs.len() / p;
        let mut runs = runs;
        runs.truncate(p);
        RleWord::block(runs, BigUint::from(reps))
    }

    fn block(period: Vec<Run>, reps: BigUint) -> RleWord {
        let plen: BigUint = period.iter().map(|r| &r.exp).sum();
        let len = &plen * &reps;
        RleWord { period, reps, len }
    }

    pub fn letter(sym: usize, sign: Sign) -> RleWord {
        RleWord::canonical(vec![Run::new(sym, sign, 1u32)])
    }

    pub fn from_raw(raw: &[RawRun]) -> RleWord {
        let mut stack = Vec::new();
        for r in raw {
            push_signed(&mut stack, r.sym, r.exp.clone());
        }
        RleWord::canonical(stack)
    }

    /// Free reduction of an arbitrary run list (exponents need not be merged).
    pub fn from_runs(runs: &[Run]) -> RleWord {
        let mut stack = Vec::new();
        for r in runs {
            push_signed(&mut stack, r.sym, r.signed());
        }
        RleWord::canonical(stack)
    }

    pub fn from_letters(letters: &[Letter]) -> RleWord {
        let mut stack = Vec::new();
        for &l in letters {
            push_signed(&mut stack, letter_sym(l), BigInt::from(l.signum()));
        }
        RleWord::canonical(stack)
    }

    /// `(period)^reps` for a freely reduced period.
    pub fn block_power(period: &[Run], reps: &BigUint) -> Result<RleWord> {
        RleWord::from_runs(period).pow(&BigInt::from(reps.clone()))
    }

    pub fn len(&self) -> &BigUint {
        &self.len
    }

    pub fn is_empty(&self) -> bool {
        self.period.is_empty()
    }

    /// Runs of one period; the whole word is this sequence repeated `reps` times.
    pub fn period(&self) -> &[Run] {
        &self.period
    }

    pub fn reps(&self) -> &BigUint {
        &self.reps
    }

    pub fn run_count(&self) -> BigUint {
        BigUint::from(self.period.len()) * &self.reps
    }

    pub fn first_run(&self) -> Option<&Run> {
        self.period.first()
    }

    pub fn last_run(&self) -> Option<&Run> {
        self.period.last()
    }

    pub fn is_positive(&self) -> bool {
        self.period.iter().all(|r| r.sign == Sign::Pos)
    }

    pub fn symbols_used(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.period.iter().map(|r| r.sym).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn explicit_runs(&self) -> Result<Vec<Run>> {
        let count = self.run_count();
        if count > BigUint::from(EXPAND_LIMIT) {
            return Err(Error::TooLarge(format!("{count} runs")));
        }
        let reps = self.reps.to_usize().unwrap_or(usize::MAX);
        let mut out = Vec::with_capacity(self.period.len() * reps);
        for _ in 0..reps {
            out.extend(self.period.iter().cloned());
        }
        Ok(out)
    }

    pub fn letters(&self) -> Result<Vec<Letter>> {
        if self.len > BigUint::from(DENSE_LIMIT) {
            return Err(Error::TooLarge(format!("length {}", self.len)));
        }
        let mut out = Vec::with_capacity(self.len.to_usize().unwrap_or(0));
        let reps = self.reps.to_usize().unwrap_or(0);
        for _ in 0..reps {
            for r in &self.period {
                let e = r.exp.to_usize().unwrap_or(0);
                out.extend(std::iter::repeat_n(r.letter(), e));
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> RleWord {
        let period: Vec<Run> = self.period.iter().rev().map(Run::inverse).collect();
        RleWord { period, reps: self.reps.clone(), len: self.len.clone() }
    }

    pub fn pow(&self, n: &BigInt) -> Result<RleWord> {
        if n.is_zero() || self.is_empty() {
            return Ok(RleWord::empty());
        }
        if n.is_negative() {
            return self.inverse().pow(&-n);
        }
        let n = n.magnitude();
        let first = &self.period[0];
        let last = &self.period[self.period.len() - 1];
        if self.period.len() == 1 {
            let r = Run { sym: first.sym, sign: first.sign, exp: &first.exp * &self.reps * n };
            return Ok(RleWord::block(vec![r], BigUint::one()));
        }
        if first.sym != last.sym {
            return Ok(RleWord::block(self.period.clone(), &self.reps * n));
        }
        // Ends interact: w^n = c core^n c^-1 with core cyclically reduced.
        let (core, conj) = cyclic_reduce(self);
        if core.period.len() == 1 || core.period[0].sym != core.period[core.period.len() - 1].sym {
            let p = core.pow(&BigInt::from(n.clone()))?;
            return conj.mul(&p)?.mul(&conj.inverse());
        }
        let total = core.run_count() * n;
        if total > BigUint::from(EXPAND_LIMIT) {
            return Err(Error::TooLarge(format!("power with about {total} runs")));
        }
        let runs = core.explicit_runs()?;
        let mut stack = Vec::new();
        let reps = n.to_usize().unwrap_or(0);
        for _ in 0..reps {
            for r in &runs {
                push_signed(&mut stack, r.sym, r.signed());
            }
        }
        conj.mul(&RleWord::canonical(stack))?.mul(&conj.inverse())
    }

    /// Free-group product; expands both factors explicitly.
    pub fn mul(&self, other: &RleWord) -> Result<RleWord> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let n = self.period.len();
        if self.period == other.period && n >= 2 && self.period[0].sym != self.period[n - 1].sym {
            return Ok(RleWord::block(self.period.clone(), &self.reps + &other.reps));
        }
        let mut stack = self.explicit_runs()?;
        for r in other.explicit_runs()? {
            push_signed(&mut stack, r.sym, r.signed());
        }
        Ok(RleWord::canonical(stack))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.period.first(), self.period.last()) {
            (Some(f), Some(l)) => f.sym != l.sym || f.sign == l.sign,
            _ => true,
        }
    }

    /// Letter at position `pos` (0-based).
    pub fn letter_at(&self, pos: &BigUint) -> Option<Letter> {
        if *pos >= self.len || self.is_empty() {
            return None;
        }
        let plen = &self.len / &self.reps;
        let mut off = pos.mod_floor(&plen);
        for r in &self.period {
            if off < r.exp {
                return Some(r.letter());
            }
            off -= &r.exp;
        }
        None
    }
}

/// Free reduction of a raw run sequence over `alphabet`.
pub fn free_reduce(raw: &[RawRun], alphabet: &Alphabet) -> Result<RleWord> {
    if let Some(r) = raw.iter().find(|r| r.sym >= alphabet.len()) {
        return Err(Error::UnknownSymbol(format!("#{}", r.sym)));
    }
    Ok(RleWord::from_raw(raw))
}

/// Returns `(core, conjugator)` with `w = conjugator · core · conjugator⁻¹`.
pub fn cyclic_reduce(w: &RleWord) -> (RleWord, RleWord) {
    if w.is_cyclically_reduced() {
        return (w.clone(), RleWord::empty());
    }
    // Blocks always have distinct end symbols, so this word is explicit.
    let mut runs = w.period.clone();
    let mut conj: Vec<Run> = Vec::new();
    while runs.len() >= 2 {
        let n = runs.len();
        let (f, l) = (&runs[0], &runs[n - 1]);
        if f.sym != l.sym || f.sign == l.sign {
            break;
        }
        let m = (&f.exp).min(&l.exp).clone();
        let piece = match f.sign {
            Sign::Pos => BigInt::from(m.clone()),
            Sign::Neg => -BigInt::from(m.clone()),
        };
        push_signed(&mut conj, f.sym, piece);
        runs[0].exp -= &m;
        runs[n - 1].exp -= &m;
        if runs[n - 1].exp.is_zero() {
            runs.pop();
        }
        if runs[0].exp.is_zero() {
            runs.remove(0);
        }
    }
    (RleWord::canonical(runs), RleWord::canonical(conj))
}

/// Cyclic run structure of a nonempty cyclically reduced word: `runs` is the
/// primitive cyclic period, `origin` the letter offset in the linear word at
/// which the first of those runs starts.
#[derive(Clone, Debug)]
pub(crate) struct Cyclic {
    pub runs: Vec<Run>,
    pub reps: BigUint,
    pub origin: BigUint,
    pub len: BigUint,
}

pub(crate) fn cyclic_structure(w: &RleWord) -> Option<Cyclic> {
    if w.is_empty() {
        return None;
    }
    debug_assert!(w.is_cyclically_reduced());
    if w.reps > BigUint::one() || w.period.len() == 1 {
        return Some(Cyclic {
            runs: w.period.clone(),
            reps: w.reps.clone(),
            origin: BigUint::zero(),
            len: w.len.clone(),
        });
    }
    let r = &w.period;
    let n = r.len();
    let (list, origin) = if r[0].sym == r[n - 1].sym {
        let merged = Run { sym: r[0].sym, sign: r[0].sign, exp: &r[0].exp + &r[n - 1].exp };
        let mut list = vec![merged];
        list.extend(r[1..n - 1].iter().cloned());
        (list, &w.len - &r[n - 1].exp)
    } else {
        (r.clone(), BigUint::zero())
    };
    let p = primitive_period(&list);
    let reps = BigUint::from(list.len() / p);
    let mut list = list;
    list.truncate(p);
    Some(Cyclic { runs: list, reps, origin, len: w.len.clone() })
}

/// True iff `v` is a cyclic shift of `u` or of `u⁻¹`.
pub fn star_equivalent(u: &RleWord, v: &RleWord) -> bool {
    if u.len != v.len {
        return false;
    }
    let (cu, cv) = match (cyclic_structure(u), cyclic_structure(v)) {
        (None, None) => return true,
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    if cu.reps != cv.reps || cu.runs.len() != cv.runs.len() {
        return false;
    }
    if rotation_offset(&cu.runs, &cv.runs).is_some() {
        return true;
    }
    let inv: Vec<Run> = cv.runs.iter().rev().map(Run::inverse).collect();
    rotation_offset(&cu.runs, &inv).is_some()
}

/// All distinct cyclic shifts of a short word and its inverse, as letters.
pub fn star_closure_letters(w: &[Letter]) -> Vec<Vec<Letter>> {
    let n = w.len();
    let inv: Vec<Letter> = w.iter().rev().map(|l| -l).collect();
    let mut out: Vec<Vec<Letter>> = Vec::new();
    for base in [w, &inv[..]] {
        for s in 0..n {
            let shifted: Vec<Letter> = base[s..].iter().chain(base[..s].iter()).copied().collect();
            if !out.contains(&shifted) {
                out.push(shifted);
            }
        }
    }
    out
}

/// Stack-based free reduction of dense letters.
pub fn reduce_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| -l).collect()
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}
