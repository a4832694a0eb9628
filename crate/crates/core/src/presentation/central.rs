use super::dehn::{dehn_reduce_letters, DehnRelators, DehnTrace};
use super::Presentation;
use crate::error::{Error, Result};
use crate::families::ConstructionConfig;
use crate::words::{letter_sym, Alphabet, Letter, RleWord};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

/// Which central extension: `A`/`B` carry `[s,u_i]` and `u_i^{ℓ_i}`; `G`
/// additionally identifies `u_i` with `v_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtShape {
    A,
    B,
    G,
}

#[derive(Clone, Debug)]
pub struct CentralExtSpec {
    pub alphabet: Alphabet,
    pub shape: ExtShape,
    pub u: Vec<RleWord>,
    /// Only for `G`; same length as `u`.
    pub v: Vec<RleWord>,
    /// `ℓ_i`, or `None` when `u_i^{ℓ_i}` is absent.
    pub orders: Vec<Option<BigInt>>,
    /// Length of the shortest relator beyond the truncation, if known.
    pub next_len: Option<BigUint>,
    rels: DehnRelators,
    key_modulus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralVerdict {
    pub trivial: bool,
    /// The image in `H` is trivial, so the word lies in `K`.
    pub in_kernel: bool,
    /// `e_i mod ℓ_i` (raw `e_i` without a power relator). Empty unless `in_kernel`.
    pub kernel: Vec<BigInt>,
    pub trace: DehnTrace,
}

impl CentralExtSpec {
    /// The base `H` presentation is `u_0, …` for `A`/`B` and
    /// `u_0, …, v_0, …` for `G`; it must be C'(1/6).
    pub fn new(
        alphabet: Alphabet,
        shape: ExtShape,
        u: Vec<RleWord>,
        v: Vec<RleWord>,
        orders: Vec<Option<BigInt>>,
        next_len: Option<BigUint>,
    ) -> Result<CentralExtSpec> {
        if orders.len() != u.len() {
            return Err(Error::InvalidConfig("one order per u_i is required".into()));
        }
        match shape {
            ExtShape::G if v.len() != u.len() => {
                return Err(Error::InvalidConfig("G needs one v_i per u_i".into()));
            }
            ExtShape::A | ExtShape::B if !v.is_empty() => {
                return Err(Error::InvalidConfig("A and B presentations have no v_i".into()));
            }
            _ => {}
        }
        if orders.iter().flatten().any(|l| l < &BigInt::from(2)) {
            return Err(Error::InvalidConfig("orders must be at least 2".into()));
        }
        let base_words: Vec<RleWord> = u.iter().chain(v.iter()).cloned().collect();
        let base = Presentation::from_words(alphabet.clone(), &base_words);
        let rels = DehnRelators::new(&base)?;

        // Every relator's exponent-sum vector has entries divisible by this.
        let mut g = BigInt::zero();
        for (i, w) in u.iter().enumerate() {
            let ab = abelianize(w, alphabet.len());
            if let Some(l) = &orders[i] {
                for e in &ab {
                    g = g.gcd(&(l * e));
                }
            }
            if shape == ExtShape::G {
                for e in ab.iter().chain(abelianize(&v[i], alphabet.len()).iter()) {
                    g = g.gcd(e);
                }
            }
        }
        let key_modulus = i64::try_from(g).unwrap_or(0);
        Ok(CentralExtSpec { alphabet, shape, u, v, orders, next_len, rels, key_modulus })
    }

    /// `A` with `ℓ_i` orders, no truncation bound.
    pub fn a_type(alphabet: Alphabet, u: Vec<RleWord>, orders: Vec<BigInt>) -> Result<CentralExtSpec> {
        CentralExtSpec::new(alphabet, ExtShape::A, u, Vec::new(), orders.into_iter().map(Some).collect(), None)
    }

    /// The free group on `alphabet`.
    pub fn free(alphabet: Alphabet) -> Result<CentralExtSpec> {
        CentralExtSpec::new(alphabet, ExtShape::A, Vec::new(), Vec::new(), Vec::new(), None)
    }

    pub fn from_config(config: &ConstructionConfig, shape: ExtShape) -> Result<CentralExtSpec> {
        let n = config.truncation;
        let orders = (0..n).map(|i| config.ell(i).map(Some)).collect::<Result<Vec<_>>>()?;
        let mut next_u = config.u.clone();
        next_u.truncation = n + 1;
        let mut next_v = config.v.clone();
        next_v.truncation = n + 1;
        let full = &config.alphabet;
        let (alphabet, u, v, next) = match shape {
            ExtShape::A => (full.clone(), config.u_words()?, Vec::new(), next_u.word(n)?.len().clone()),
            ExtShape::B => (full.clone(), config.v_words()?, Vec::new(), next_v.word(n)?.len().clone()),
            ExtShape::G => {
                let nu = next_u.word(n)?.len().clone();
                let nv = next_v.word(n)?.len().clone();
                (full.clone(), config.u_words()?, config.v_words()?, nu.min(nv))
            }
        };
        CentralExtSpec::new(alphabet, shape, u, v, orders, Some(next))
    }

    pub fn truncation(&self) -> usize {
        self.u.len()
    }

    pub fn relators(&self) -> &DehnRelators {
        &self.rels
    }

    fn coordinate(&self, relator: usize) -> usize {
        relator % self.u.len().max(1)
    }

    /// An invariant of the group element: exponent sums reduced modulo the
    /// gcd of all relator exponent sums.
    pub fn bucket_key(&self, w: &[Letter]) -> Vec<i64> {
        let mut key = vec![0i64; self.alphabet.len()];
        for &l in w {
            key[letter_sym(l)] += l.signum() as i64;
        }
        if self.key_modulus > 0 {
            for k in &mut key {
                *k = k.rem_euclid(self.key_modulus);
            }
        }
        key
    }

    pub fn decide_letters(&self, w: &[Letter]) -> Result<CentralVerdict> {
        let trace = dehn_reduce_letters(w, &self.rels);
        if let Some(next) = &self.next_len {
            let longest = crate::words::reduce_letters(w).len();
            if BigUint::from(2 * longest) > *next {
                return Err(Error::TruncationTooSmall(format!(
                    "a word of length {longest} may involve relators beyond the truncation (next relator length {next})"
                )));
            }
        }
        if !trace.is_trivial() {
            return Ok(CentralVerdict { trivial: false, in_kernel: false, kernel: Vec::new(), trace });
        }
        let mut e = vec![BigInt::zero(); self.u.len()];
        for (r, &x) in trace.exponents.iter().enumerate() {
            e[self.coordinate(r)] += x;
        }
        let mut trivial = true;
        for (ei, l) in e.iter_mut().zip(&self.orders) {
            if let Some(l) = l {
                *ei = ei.mod_floor(l);
            }
            if !ei.is_zero() {
                trivial = false;
            }
        }
        Ok(CentralVerdict { trivial, in_kernel: true, kernel: e, trace })
    }

    /// `a =_G b`.
    pub fn equal_letters(&self, a: &[Letter], b: &[Letter]) -> Result<bool> {
        let mut w = a.to_vec();
        w.extend(crate::words::invert_letters(b));
        Ok(self.decide_letters(&w)?.trivial)
    }
}

fn abelianize(w: &RleWord, n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    let reps = BigInt::from(w.reps().clone());
    for r in w.period() {
        v[r.sym] += r.signed() * &reps;
    }
    v
}

/// Decides `w = 1` in the central extension by Dehn reduction in `H` plus
/// the kernel coordinates `e_i mod ℓ_i`.
pub fn word_problem_central_ext(w: &RleWord, spec: &CentralExtSpec) -> Result<CentralVerdict> {
    spec.decide_letters(&w.letters()?)
}
