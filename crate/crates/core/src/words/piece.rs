//! Longest pieces between cyclic words, computed on run structure.
//!
//! A piece of `u` and `v` is a common prefix of some `u' ∈ {u}_*` and
//! `v' ∈ {v}_*` with `u' ≠ v'`. Every cyclic shift of `u^±1` is a window of
//! the bi-infinite periodic word, so the piece length is the longest common
//! extension between two positions, capped at `min(|u|, |v|)`. When
//! `|u| = |v|`, an unbounded extension means the two windows are the same
//! word, and that pair is excluded.

use super::{cyclic_structure, Cyclic, RleWord, Run};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

/// Largest run-pair table the algorithm will allocate.
const MAX_PAIR_STATES: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceWitness {
    pub u_inverted: bool,
    pub u_shift: BigUint,
    pub v_inverted: bool,
    pub v_shift: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceReport {
    pub length: BigUint,
    /// `None` iff `length` is zero.
    pub witness: Option<PieceWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerPiece {
    Bounded(BigUint),
    /// The word is itself a power of the letter.
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ext {
    Fin(BigUint),
    Inf,
}

struct Variant {
    cyc: Cyclic,
    inverted: bool,
    /// Letter offset of each run start inside one period.
    starts: Vec<BigUint>,
}

impl Variant {
    fn new(w: &RleWord, inverted: bool) -> Variant {
        let w = if inverted { w.inverse() } else { w.clone() };
        let cyc = cyclic_structure(&w).expect("nonempty");
        let mut starts = Vec::with_capacity(cyc.runs.len());
        let mut acc = BigUint::zero();
        for r in &cyc.runs {
            starts.push(acc.clone());
            acc += &r.exp;
        }
        Variant { cyc, inverted, starts }
    }

    fn shift(&self, run: usize, offset: &BigUint) -> BigUint {
        (&self.cyc.origin + &self.starts[run] + offset) % &self.cyc.len
    }
}

fn same_letter(a: &Run, b: &Run) -> bool {
    a.sym == b.sym && a.sign == b.sign
}

/// `chain[i * pb + j]`: longest common extension starting at the beginning of
/// run `i` of `a` and run `j` of `b`.
fn chain_table(a: &[Run], b: &[Run]) -> Vec<Ext> {
    let (pa, pb) = (a.len(), b.len());
    let mut table: Vec<Option<Ext>> = vec![None; pa * pb];
    let mut on_path = vec![false; pa * pb];
    for start in 0..pa * pb {
        if table[start].is_some() {
            continue;
        }
        let mut path = Vec::new();
        let mut state = start;
        let tail = loop {
            if let Some(v) = &table[state] {
                break v.clone();
            }
            if on_path[state] {
                break Ext::Inf;
            }
            let (i, j) = (state / pb, state % pb);
            if a[i] != b[j] {
                let v = if same_letter(&a[i], &b[j]) {
                    Ext::Fin((&a[i].exp).min(&b[j].exp).clone())
                } else {
                    Ext::Fin(BigUint::zero())
                };
                table[state] = Some(v.clone());
                break v;
            }
            on_path[state] = true;
            path.push(state);
            state = ((i + 1) % pa) * pb + (j + 1) % pb;
        };
        let mut val = tail;
        for &s in path.iter().rev() {
            on_path[s] = false;
            val = match val {
                Ext::Inf => Ext::Inf,
                Ext::Fin(x) => Ext::Fin(x + &a[s / pb].exp),
            };
            table[s] = Some(val.clone());
        }
    }
    table.into_iter().map(|v| v.expect("filled")).collect()
}

struct Best {
    length: BigUint,
    witness: Option<PieceWitness>,
}

impl Best {
    fn offer(&mut self, len: BigUint, w: impl FnOnce() -> PieceWitness) {
        if len > self.length {
            self.length = len;
            self.witness = Some(w());
        }
    }
}

/// Maximal piece length between two cyclically reduced words.
pub fn max_piece(u: &RleWord, v: &RleWord) -> Result<PieceReport> {
    if !u.is_cyclically_reduced() || !v.is_cyclically_reduced() {
        return Err(Error::Precondition("max_piece needs cyclically reduced words".into()));
    }
    if u.is_empty() || v.is_empty() {
        return Ok(PieceReport { length: BigUint::zero(), witness: None });
    }
    let cap = u.len().min(v.len()).clone();
    let equal_len = u.len() == v.len();
    let mut best = Best { length: BigUint::zero(), witness: None };

    let us = [Variant::new(u, false), Variant::new(u, true)];
    let vs = [Variant::new(v, false), Variant::new(v, true)];

    if us[0].cyc.runs.len() == 1 || vs[0].cyc.runs.len() == 1 {
        letter_power_piece(&us, &vs, &mut best);
        return Ok(PieceReport { length: best.length, witness: best.witness });
    }

    for uv in &us {
        for vv in &vs {
            let (a, b) = (&uv.cyc.runs, &vv.cyc.runs);
            if a.len().saturating_mul(b.len()) > MAX_PAIR_STATES {
                return Err(Error::Unsupported(format!(
                    "run structure too large for piece search ({} x {} runs)",
                    a.len(),
                    b.len()
                )));
            }
            let chain = chain_table(a, b);
            let pb = b.len();
            for i in 0..a.len() {
                for (j, bj) in b.iter().enumerate() {
                    if !same_letter(&a[i], bj) {
                        continue;
                    }
                    let (ea, eb) = (&a[i].exp, &bj.exp);
                    let t = ea.min(eb).clone();
                    let next = ((i + 1) % a.len()) * pb + (j + 1) % pb;
                    let aligned = match &chain[next] {
                        Ext::Inf if equal_len => None,
                        Ext::Inf => Some(cap.clone()),
                        Ext::Fin(x) => Some((&t + x).min(cap.clone())),
                    };
                    if let Some(len) = aligned {
                        best.offer(len, || PieceWitness {
                            u_inverted: uv.inverted,
                            u_shift: uv.shift(i, &(ea - &t)),
                            v_inverted: vv.inverted,
                            v_shift: vv.shift(j, &(eb - &t)),
                        });
                    }
                    // Windows whose runs end at different places.
                    let (len, ob) =
                        if ea != eb { (t.clone(), BigUint::zero()) } else { (&t - 1u32, BigUint::from(1u32)) };
                    if !len.is_zero() {
                        best.offer(len.min(cap.clone()), || PieceWitness {
                            u_inverted: uv.inverted,
                            u_shift: uv.shift(i, &BigUint::zero()),
                            v_inverted: vv.inverted,
                            v_shift: vv.shift(j, &ob),
                        });
                    }
                }
            }
        }
    }
    Ok(PieceReport { length: best.length, witness: best.witness })
}

fn letter_power_piece(us: &[Variant; 2], vs: &[Variant; 2], best: &mut Best) {
    let (pu, pv) = (&us[0].cyc.runs, &vs[0].cyc.runs);
    if pu.len() == 1 && pv.len() == 1 {
        let (ru, rv) = (&pu[0], &pv[0]);
        if ru.sym == rv.sym && ru.exp != rv.exp {
            best.offer(ru.exp.clone().min(rv.exp.clone()), || PieceWitness {
                u_inverted: false,
                u_shift: BigUint::zero(),
                v_inverted: ru.sign != rv.sign,
                v_shift: BigUint::zero(),
            });
        }
        return;
    }
    let (power, other, swapped) = if pu.len() == 1 { (us, vs, false) } else { (vs, us, true) };
    let r = &power[0].cyc.runs[0];
    let ov = &other[0];
    for (j, run) in ov.cyc.runs.iter().enumerate() {
        if run.sym != r.sym {
            continue;
        }
        let len = (&r.exp).min(&run.exp).clone();
        let power_inv = r.sign != run.sign;
        let oshift = ov.shift(j, &BigUint::zero());
        best.offer(len, || {
            let (pi, ps, oi, os) = (power_inv, BigUint::zero(), false, oshift);
            if swapped {
                PieceWitness { u_inverted: oi, u_shift: os, v_inverted: pi, v_shift: ps }
            } else {
                PieceWitness { u_inverted: pi, u_shift: ps, v_inverted: oi, v_shift: os }
            }
        });
    }
}

/// Longest piece between any power of the letter `sym` and `v`.
pub fn max_piece_with_power(sym: usize, v: &RleWord) -> Result<PowerPiece> {
    if !v.is_cyclically_reduced() {
        return Err(Error::Precondition("max_piece_with_power needs a cyclically reduced word".into()));
    }
    let cyc = match cyclic_structure(v) {
        None => return Ok(PowerPiece::Bounded(BigUint::zero())),
        Some(c) => c,
    };
    if cyc.runs.len() == 1 {
        return Ok(if cyc.runs[0].sym == sym { PowerPiece::Unbounded } else { PowerPiece::Bounded(BigUint::zero()) });
    }
    let longest = cyc.runs.iter().filter(|r| r.sym == sym).map(|r| r.exp.clone()).max();
    Ok(PowerPiece::Bounded(longest.unwrap_or_default()))
}

/// `max_piece(u, v) < λ · min(|u|, |v|)`.
pub fn check_cprime_pair(u: &RleWord, v: &RleWord, lambda: &BigRational) -> Result<bool> {
    let p = max_piece(u, v)?;
    let min = u.len().min(v.len()).clone();
    Ok(BigRational::from_integer(p.length.into()) < lambda * BigRational::from_integer(min.into()))
}
