use super::{check_cprime, Presentation};
use crate::error::{Error, Result};
use crate::words::{invert_letters, reduce_letters, Letter, RleWord};
use num_rational::BigRational;

/// One star element of a relator.
#[derive(Clone, Debug)]
struct Variant {
    relator: usize,
    inverted: bool,
    shift: usize,
    letters: Vec<Letter>,
}

/// The star closure of a C'(1/6) presentation, ready for Dehn's algorithm.
#[derive(Clone, Debug)]
pub struct DehnRelators {
    relators: Vec<Vec<Letter>>,
    /// Distinct star elements, ordered by (relator, star index).
    variants: Vec<Variant>,
    /// Variant indices bucketed by first letter.
    by_first: std::collections::HashMap<Letter, Vec<usize>>,
}

impl DehnRelators {
    /// Refuses presentations that are not cyclically reduced, cyclically
    /// minimal and C'(1/6).
    pub fn new(p: &Presentation) -> Result<DehnRelators> {
        let structure = p.structure_report()?;
        if let Some(c) = structure.first_failure() {
            return Err(Error::Refused(format!("Dehn's algorithm needs {}: {}", c.name, c.detail)));
        }
        let sixth = BigRational::new(1.into(), 6.into());
        let cp = check_cprime(p, &sixth, None)?;
        if !cp.holds {
            return Err(Error::Refused(format!(
                "presentation is not C'(1/6): piece ratio {} at pair {:?}",
                cp.max_ratio, cp.worst_pair
            )));
        }
        let relators = p.words()?.iter().map(RleWord::letters).collect::<Result<Vec<_>>>()?;
        Ok(DehnRelators::from_letters_unchecked(relators))
    }

    /// No small-cancellation check; used by tests and by callers that have
    /// already verified the hypothesis.
    pub(crate) fn from_letters_unchecked(relators: Vec<Vec<Letter>>) -> DehnRelators {
        let mut variants: Vec<Variant> = Vec::new();
        for (idx, r) in relators.iter().enumerate() {
            let inv = invert_letters(r);
            let mut seen: Vec<Vec<Letter>> = Vec::new();
            for (inverted, base) in [(false, r), (true, &inv)] {
                for shift in 0..base.len() {
                    let w: Vec<Letter> = base[shift..].iter().chain(&base[..shift]).copied().collect();
                    if seen.contains(&w) {
                        continue;
                    }
                    seen.push(w.clone());
                    variants.push(Variant { relator: idx, inverted, shift, letters: w });
                }
            }
        }
        let mut by_first: std::collections::HashMap<Letter, Vec<usize>> = Default::default();
        for (i, v) in variants.iter().enumerate() {
            if let Some(&f) = v.letters.first() {
                by_first.entry(f).or_default().push(i);
            }
        }
        DehnRelators { relators, variants, by_first }
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn relator(&self, i: usize) -> &[Letter] {
        &self.relators[i]
    }

    pub fn max_len(&self) -> usize {
        self.relators.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// One replacement `q → t⁻¹` where `q t` is a star element of a relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnStep {
    pub pos: usize,
    pub relator: usize,
    pub inverted: bool,
    pub shift: usize,
    pub q_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnTrace {
    pub residual: Vec<Letter>,
    /// Signed number of relator conjugates removed, per relator.
    pub exponents: Vec<i64>,
    pub steps: Vec<DehnStep>,
}

impl DehnTrace {
    pub fn residual_word(&self) -> RleWord {
        RleWord::from_letters(&self.residual)
    }

    pub fn is_trivial(&self) -> bool {
        self.residual.is_empty()
    }

    /// Re-applies every step to `w` and checks that `w` equals the product
    /// of the removed conjugates times the residual in the free group.
    pub fn replay(&self, w: &[Letter], rels: &DehnRelators) -> bool {
        let mut cur = reduce_letters(w);
        let mut product: Vec<Letter> = Vec::new();
        let mut exps = vec![0i64; rels.relator_count()];
        for s in &self.steps {
            let Some(v) =
                rels.variants.iter().find(|v| v.relator == s.relator && v.inverted == s.inverted && v.shift == s.shift)
            else {
                return false;
            };
            if s.pos + s.q_len > cur.len()
                || cur[s.pos..s.pos + s.q_len] != v.letters[..s.q_len]
                || 2 * s.q_len <= v.letters.len()
            {
                return false;
            }
            let prefix = &cur[..s.pos];
            product.extend_from_slice(prefix);
            product.extend_from_slice(&v.letters);
            product.extend(invert_letters(prefix));
            exps[s.relator] += if s.inverted { -1 } else { 1 };
            let mut next = prefix.to_vec();
            next.extend(invert_letters(&v.letters[s.q_len..]));
            next.extend_from_slice(&cur[s.pos + s.q_len..]);
            let next = reduce_letters(&next);
            if next.len() >= cur.len() {
                return false;
            }
            cur = next;
        }
        product.extend_from_slice(&cur);
        cur == self.residual && exps == self.exponents && reduce_letters(&product) == reduce_letters(w)
    }
}

fn find_step(w: &[Letter], rels: &DehnRelators) -> Option<(DehnStep, usize)> {
    for pos in 0..w.len() {
        let Some(cands) = rels.by_first.get(&w[pos]) else { continue };
        let mut best: Option<(usize, usize)> = None;
        for &vi in cands {
            let v = &rels.variants[vi];
            let n = v.letters.len();
            let lcp = w[pos..].iter().zip(&v.letters).take_while(|(a, b)| a == b).count();
            if 2 * lcp <= n {
                continue;
            }
            // Candidates are already ordered by relator then star index.
            if best.is_none_or(|(l, _)| lcp > l) {
                best = Some((lcp, vi));
            }
        }
        if let Some((q_len, vi)) = best {
            let v = &rels.variants[vi];
            return Some((DehnStep { pos, relator: v.relator, inverted: v.inverted, shift: v.shift, q_len }, vi));
        }
    }
    None
}

/// Dehn's algorithm on a dense word. Matches are taken leftmost first, then
/// longest, then by lowest relator index and star index.
pub fn dehn_reduce_letters(w: &[Letter], rels: &DehnRelators) -> DehnTrace {
    let mut cur = reduce_letters(w);
    let mut exponents = vec![0i64; rels.relator_count()];
    let mut steps = Vec::new();
    while let Some((s, vi)) = find_step(&cur, rels) {
        let v = &rels.variants[vi];
        let mut next = cur[..s.pos].to_vec();
        next.extend(invert_letters(&v.letters[s.q_len..]));
        next.extend_from_slice(&cur[s.pos + s.q_len..]);
        cur = reduce_letters(&next);
        exponents[s.relator] += if s.inverted { -1 } else { 1 };
        steps.push(s);
    }
    DehnTrace { residual: cur, exponents, steps }
}

pub fn dehn_reduce(w: &RleWord, p: &Presentation) -> Result<DehnTrace> {
    let rels = DehnRelators::new(p)?;
    Ok(dehn_reduce_letters(&w.letters()?, &rels))
}
