use super::{block_index, partition_block, Dim, FamilyKind, FamilySpec, Seq};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::words::{max_piece, max_piece_with_power, star_equivalent, Alphabet, PowerPiece, RleWord};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionConfig {
    pub alphabet: Alphabet,
    pub m: Dim,
    pub n: Dim,
    pub lambda: BigRational,
    pub u: FamilySpec,
    pub v: FamilySpec,
    pub truncation: usize,
}

/// `p_j = m(j+2)^2`, and `q_j = n^2(j+3)^2` or `m(j+3)^4` when `n = ∞`.
pub fn example_sequences(m: Dim, n: Dim) -> Result<(Seq, Seq)> {
    let Dim::Finite(_) = m else {
        return Err(Error::InvalidConfig("m must be a positive integer".into()));
    };
    if !m.lt(n) {
        return Err(Error::InvalidConfig(format!("need m < n, got m={m} n={n}")));
    }
    let p = Seq::rule("m*(j+2)^2")?;
    let q = match n {
        Dim::Finite(_) => Seq::rule("n^2*(j+3)^2")?,
        Dim::Infinite => Seq::rule("m*(j+3)^4")?,
    };
    Ok((p, q))
}

impl ConstructionConfig {
    /// The explicit families with `k = 14`, `λ = 1/13` and `ℓ_i = 14^(i+1)`.
    pub fn explicit_example(m: Dim, n: Dim, truncation: usize) -> Result<ConstructionConfig> {
        let (p, q) = example_sequences(m, n)?;
        let alphabet = Alphabet::new(["a", "x", "b", "y"])?;
        let ell = Seq::rule("14^(i+1)")?;
        let fam = |name: &str, syms: [usize; 2], part: Dim, seq: Seq| FamilySpec {
            name: name.into(),
            kind: FamilyKind::Technical { part, p: seq },
            syms,
            k: 14,
            ell: ell.clone(),
            truncation,
            dims: (m, n),
        };
        Ok(ConstructionConfig {
            alphabet,
            m,
            n,
            lambda: BigRational::new(1.into(), 13.into()),
            u: fam("u", [0, 1], m, p),
            v: fam("v", [2, 3], n, q),
            truncation,
        })
    }

    /// `ℓ_i`, taken from the U family.
    pub fn ell(&self, i: usize) -> Result<BigInt> {
        self.u.ell(i)
    }

    pub fn u_words(&self) -> Result<Vec<RleWord>> {
        (0..self.truncation).map(|i| self.u.word(i)).collect()
    }

    pub fn v_words(&self) -> Result<Vec<RleWord>> {
        (0..self.truncation).map(|i| self.v.word(i)).collect()
    }

    /// Well-formedness needed before relators can be emitted: disjoint
    /// alphabets, `m < n`, rules that evaluate for every index below the
    /// truncation, and `ℓ` increasing with `ℓ_0 ≥ 2`.
    pub fn structure_report(&self) -> Report {
        let mut rep = Report::new("configuration");
        let mut syms: Vec<usize> = self.u.syms.iter().chain(self.v.syms.iter()).copied().collect();
        syms.sort_unstable();
        syms.dedup();
        rep.check("alphabets disjoint", syms.len() == 4 && syms.iter().all(|&s| s < self.alphabet.len()), "");
        rep.check("m < n", self.m.lt(self.n) && self.m.finite().is_some(), format!("m={} n={}", self.m, self.n));
        let words = self.u_words().and_then(|u| self.v_words().map(|v| (u, v)));
        match words {
            Ok(_) => rep.pass("rules evaluate", format!("indices < {}", self.truncation)),
            Err(e) => rep.fail("rules evaluate", e.to_string()),
        }
        let ells: Result<Vec<BigInt>> = (0..self.truncation).map(|i| self.ell(i)).collect();
        match ells {
            Err(e) => rep.fail("order rule", e.to_string()),
            Ok(ells) => {
                let first_ok = ells.first().is_none_or(|l| *l >= BigInt::from(2));
                let bad = ells.windows(2).position(|w| w[0] >= w[1]);
                let detail = if !first_ok {
                    format!("l_0 = {} < 2 (u_0^l_0 would kill u_0)", ells[0])
                } else if let Some(i) = bad {
                    format!("not increasing at i={i}")
                } else {
                    format!(
                        "l_0 = {}, increasing over i < {}",
                        ells.first().map(|l| l.to_string()).unwrap_or_default(),
                        self.truncation
                    )
                };
                rep.check("order rule l_0 >= 2 and increasing", first_ok && bad.is_none(), detail);
                let agree = (0..self.truncation).all(|i| self.v.ell(i).ok().as_ref() == ells.get(i));
                rep.check("both families use the same order rule", agree, "");
            }
        }
        rep
    }
}

fn ratio(piece: &BigUint, min: &BigUint) -> BigRational {
    BigRational::new(piece.clone().into(), min.clone().into())
}

fn family_cprime(rep: &mut Report, tag: &str, words: &[RleWord], lambda: &BigRational) {
    let mut worst = BigRational::from_integer(0.into());
    let mut worst_pair = (0, 0);
    let mut violation = None;
    let mut error = None;
    for i in 0..words.len() {
        for j in i..words.len() {
            match max_piece(&words[i], &words[j]) {
                Err(e) => {
                    error.get_or_insert(format!("pair ({i},{j}): {e}"));
                }
                Ok(p) => {
                    let r = ratio(&p.length, words[i].len().min(words[j].len()));
                    if &r >= lambda && violation.is_none() {
                        violation = Some(format!("pair ({i},{j}) piece ratio {r} >= {lambda}"));
                    }
                    if r > worst {
                        worst = r;
                        worst_pair = (i, j);
                    }
                }
            }
        }
    }
    let name = format!("(a) {tag} satisfies C'({lambda})");
    match (error, violation) {
        (Some(e), _) => rep.fail(name, e),
        (None, Some(v)) => rep.fail(name, v),
        (None, None) => rep.pass(name, format!("max piece ratio {worst} at pair {worst_pair:?}")),
    }
}

fn first_equal_pair(words: &[RleWord], eq: impl Fn(&RleWord, &RleWord) -> bool) -> Option<(usize, usize)> {
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if eq(&words[i], &words[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(a)–(g)` over indices below the configured truncation. Violations are
/// report entries; nothing here returns an error.
pub fn validate_family_conditions(config: &ConstructionConfig) -> Report {
    let mut rep = config.structure_report();
    let lam = &config.lambda;
    let twelfth = BigRational::new(1.into(), 12.into());
    rep.check(
        "lambda in (0, 1/12)",
        *lam > BigRational::from_integer(0.into()) && *lam < twelfth,
        format!("lambda = {lam}"),
    );
    let (u, v) = match (config.u_words(), config.v_words()) {
        (Ok(u), Ok(v)) => (u, v),
        _ => return rep,
    };
    let n = config.truncation;

    for (tag, words) in [("U", &u), ("V", &v)] {
        let bad = words.iter().position(|w| !w.is_cyclically_reduced());
        rep.check(
            format!("(a) {tag} cyclically reduced"),
            bad.is_none(),
            bad.map(|i| format!("i={i}")).unwrap_or_default(),
        );
        let pair = first_equal_pair(words, star_equivalent);
        rep.check(
            format!("(a) {tag} cyclically minimal"),
            pair.is_none(),
            pair.map(|(i, j)| format!("{tag}_{i} and {tag}_{j} are star-equivalent")).unwrap_or_default(),
        );
        family_cprime(&mut rep, tag, words, lam);
    }

    let y = config.v.syms[1];
    let mut bad_b = None;
    let mut worst_b = BigRational::from_integer(0.into());
    for (i, w) in v.iter().enumerate() {
        match max_piece_with_power(y, w) {
            Ok(PowerPiece::Bounded(p)) => {
                let r = ratio(&p, w.len());
                if &r >= lam && bad_b.is_none() {
                    bad_b = Some(format!("i={i}: ratio {r}"));
                }
                if r > worst_b {
                    worst_b = r;
                }
            }
            Ok(PowerPiece::Unbounded) => {
                bad_b.get_or_insert(format!("i={i}: v_i is a power of y"));
            }
            Err(e) => {
                bad_b.get_or_insert(format!("i={i}: {e}"));
            }
        }
    }
    let yname = config.alphabet.name(y).to_string();
    match bad_b {
        Some(d) => rep.fail(format!("(b) pieces of {yname}^h and v_i < lambda|v_i|"), d),
        None => rep.pass(format!("(b) pieces of {yname}^h and v_i < lambda|v_i|"), format!("max ratio {worst_b}")),
    }

    let bad_c = (0..n).find(|&i| u[i].len() < &BigUint::from(2u32) || u[i].len() > v[i].len());
    rep.check("(c) 2 <= |u_i| <= |v_i|", bad_c.is_none(), bad_c.map(|i| format!("fails at i={i}")).unwrap_or_default());

    let du = first_equal_pair(&u, |a, b| a == b);
    let dv = first_equal_pair(&v, |a, b| a == b);
    let detail = match (du, dv) {
        (Some((i, j)), _) => format!("u_{i} = u_{j}"),
        (None, Some((i, j))) => format!("v_{i} = v_{j}"),
        _ => String::new(),
    };
    rep.check("(d) i -> u_i and i -> v_i injective", du.is_none() && dv.is_none(), detail);

    for (tag, spec, words) in [("U", &config.u, &u), ("V", &config.v, &v)] {
        let name = format!("(e) |{tag}_i| constant on blocks");
        match spec.part() {
            None => rep.push(name, crate::report::Status::Inconclusive, "not a technical family", None),
            Some(part) => {
                let bad = (1..n).find(|&i| {
                    block_index(part, i as u64) == block_index(part, i as u64 - 1)
                        && words[i].len() != words[i - 1].len()
                });
                rep.check(
                    name,
                    bad.is_none(),
                    bad.map(|i| format!("changes inside a block at i={i}")).unwrap_or_default(),
                );
            }
        }
    }

    for (tag, spec, words) in [("U", &config.u, &u), ("V", &config.v, &v)] {
        let name = format!("(f) growth of |{tag}| across blocks");
        let Some(part) = spec.part() else {
            rep.push(name, crate::report::Status::Inconclusive, "not a technical family", None);
            continue;
        };
        let mut checked = 0;
        let mut bad = None;
        let mut j = 0u64;
        loop {
            let (lo, hi) = (partition_block(part, j).start as usize, partition_block(part, j + 1).start as usize);
            if hi >= n {
                break;
            }
            let ell = match config.ell(hi) {
                Ok(l) => l,
                Err(e) => {
                    bad = Some(e.to_string());
                    break;
                }
            };
            let lhs = BigInt::from(words[hi].len().clone());
            let rhs = ell * BigInt::from(words[lo].len().clone());
            checked += 1;
            if lhs < rhs {
                bad = Some(format!("|{tag}_{hi}| < l_{hi} |{tag}_{lo}| (block j={j})"));
                break;
            }
            j += 1;
        }
        match bad {
            Some(d) => rep.fail(name, d),
            None => rep.pass(name, format!("{checked} block transitions below truncation {n}")),
        }
    }

    let closed = [&config.u, &config.v].iter().all(|s| match &s.kind {
        FamilyKind::L { mi, ni } => mi.is_closed_form() && ni.is_closed_form(),
        FamilyKind::Technical { p, .. } => p.is_closed_form(),
    });
    rep.check("(g) rules are closed-form (recursive by construction)", closed, "");
    rep
}

fn seq_ctx(m: Dim, n: Dim) -> Vec<(&'static str, BigInt)> {
    let mut v = Vec::new();
    if let Dim::Finite(m) = m {
        v.push(("m", BigInt::from(m)));
    }
    if let Dim::Finite(n) = n {
        v.push(("n", BigInt::from(n)));
    }
    v
}

/// Hypotheses on `(p_j)`, `(q_j)` for `j < J`; `(c)` is checked for every
/// `i < J·m`, which keeps both block indices below `J`.
pub fn validate_pq(m: Dim, n: Dim, p: &Seq, q: &Seq, big_j: u64) -> Report {
    let mut rep = Report::new(format!("p/q hypotheses, m={m} n={n}, J={big_j}"));
    let Some(mf) = m.finite() else {
        rep.fail("m finite", "m must be a positive integer");
        return rep;
    };
    let ctx = seq_ctx(m, n);
    let pv: Result<Vec<BigInt>> = (0..=big_j).map(|j| p.at("j", j, &ctx)).collect();
    let qv: Result<Vec<BigInt>> = (0..=big_j).map(|j| q.at("j", j, &ctx)).collect();
    let (pv, qv) = match (pv, qv) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.fail("sequences evaluate", e.to_string());
            return rep;
        }
    };
    let positive = pv[0] >= BigInt::from(1) && qv[0] >= BigInt::from(1);
    rep.check("p_0, q_0 positive", positive, format!("p_0={} q_0={}", pv[0], qv[0]));

    let fa = (0..big_j as usize).find(|&j| pv[j + 1] < &pv[j] + BigInt::from((j as u64 + 2) * mf));
    rep.check(
        "(a) p_{j+1} >= p_j + (j+2)m",
        fa.is_none(),
        fa.map(|j| format!("fails at j={j}: p_{}={} p_{j}={}", j + 1, pv[j + 1], pv[j]))
            .unwrap_or(format!("j < {big_j}")),
    );
    let step = |j: u64| match n {
        Dim::Finite(nf) => BigInt::from((j + 2) * nf),
        Dim::Infinite => BigInt::from((j + 2) * (j + 2)),
    };
    let fb = (0..big_j as usize).find(|&j| qv[j + 1] < &qv[j] + step(j as u64));
    let bname = if n.is_infinite() { "(b) q_{j+1} >= q_j + (j+2)^2" } else { "(b) q_{j+1} >= q_j + (j+2)n" };
    rep.check(
        bname,
        fb.is_none(),
        fb.map(|j| format!("fails at j={j}: q_{}={} q_{j}={}", j + 1, qv[j + 1], qv[j]))
            .unwrap_or(format!("j < {big_j}")),
    );
    let imax = big_j * mf;
    let fc = (0..imax).find(|&i| {
        let (jp, jq) = (block_index(m, i) as usize, block_index(n, i) as usize);
        match (pv.get(jp), qv.get(jq)) {
            (Some(a), Some(b)) => a > b,
            _ => false,
        }
    });
    rep.check(
        "(c) p_{block_m(i)} <= q_{block_n(i)}",
        fc.is_none(),
        fc.map(|i| format!("fails at i={i}")).unwrap_or(format!("i < {imax}")),
    );
    rep
}
