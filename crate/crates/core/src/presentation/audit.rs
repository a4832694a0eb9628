use super::bfs::{bfs_norm, BfsConfig, NormResult};
use super::central::{CentralExtSpec, ExtShape};
use super::{check_cprime, Presentation};
use crate::error::{Error, Result};
use crate::report::{Provenance, Report, Status};
use crate::words::{invert_letters, Expr, Letter, RleWord};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditOutcome {
    Pass,
    Violation,
    /// The BFS cap was reached before the bound could be certified.
    Inconclusive,
    HypothesisFailed,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub outcome: AuditOutcome,
    pub report: Report,
    /// `|ũ| + Σ|k_i||u_i|`.
    pub word_len: BigUint,
    pub norm: Option<NormResult>,
    /// `3/(1−12λ)`.
    pub constant: BigRational,
    /// `|u| / ‖ū‖`, or an upper bound on it from the BFS lower bound.
    pub ratio: Option<BigRational>,
}

/// Longest common factor of the linear word `t^{±1}` and the cyclic word `r^{±1}`.
fn linear_cyclic_overlap(t: &[Letter], r: &[Letter]) -> usize {
    let n = r.len();
    if n == 0 || t.is_empty() {
        return 0;
    }
    let mut best = 0;
    for tv in [t.to_vec(), invert_letters(t)] {
        for rv in [r.to_vec(), invert_letters(r)] {
            for i in 0..tv.len() {
                for s in 0..n {
                    let mut l = 0;
                    while i + l < tv.len() && l < n && tv[i + l] == rv[(s + l) % n] {
                        l += 1;
                    }
                    best = best.max(l);
                }
            }
        }
    }
    best
}

fn rat(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Checks `|u| ≤ 3/(1−12λ)·‖ū‖_G` for `u = ũ ∏ u_i^{k_i}` after checking the
/// small-cancellation hypotheses on `spec`.
pub fn quasigeodesic_audit(
    tilde: &RleWord,
    ks: &[BigInt],
    spec: &CentralExtSpec,
    lambda: &BigRational,
    cfg: &BfsConfig,
) -> Result<AuditReport> {
    let mut rep = Report::new("quasigeodesic audit");
    let zero = BigRational::zero();
    let twelfth = BigRational::new(1.into(), 12.into());
    let lam_ok = *lambda > zero && *lambda < twelfth;
    rep.check("lambda in (0, 1/12)", lam_ok, format!("lambda = {lambda}"));
    let constant = if lam_ok {
        BigRational::from_integer(3.into())
            / (BigRational::from_integer(1.into()) - BigRational::from_integer(12.into()) * lambda)
    } else {
        BigRational::zero()
    };

    let (us, vs) = (&spec.u, if spec.shape == ExtShape::G { &spec.v } else { &spec.u });
    let base: Vec<RleWord> = us.iter().chain(spec.v.iter()).cloned().collect();
    let base_p = Presentation::from_words(spec.alphabet.clone(), &base);
    if lam_ok {
        let cp = check_cprime(&base_p, lambda, None)?;
        rep.check(format!("U and V satisfy C'({lambda})"), cp.holds, format!("max piece ratio {}", cp.max_ratio));
    }
    let bad_len = (0..us.len()).find(|&i| us[i].len() < &BigUint::from(2u32) || us[i].len() > vs[i].len());
    rep.check("2 <= |u_i| <= |v_i|", bad_len.is_none(), bad_len.map(|i| format!("fails at i={i}")).unwrap_or_default());

    let t_letters = tilde.letters()?;
    let mut piece_bad = None;
    for w in base.iter() {
        let r = w.letters()?;
        let o = linear_cyclic_overlap(&t_letters, &r);
        if lam_ok && rat(&BigUint::from(o)) >= lambda * rat(w.len()) {
            piece_bad = Some(format!("overlap {o} with a relator of length {}", w.len()));
            break;
        }
    }
    rep.check("pieces of u~ and u_i, v_i below lambda|u_i|", piece_bad.is_none(), piece_bad.unwrap_or_default());

    let mut inj = true;
    for i in 0..us.len() {
        for j in 0..us.len() {
            if i != j && (us[i] == us[j] || vs[i] == vs[j] || us[i] == vs[j]) {
                inj = false;
            }
        }
    }
    rep.check("u_i, v_i injective", inj, "");

    if ks.len() > us.len() {
        return Err(Error::TruncationTooSmall(format!("{} exponents for {} relators", ks.len(), us.len())));
    }
    let mut k_ok = true;
    for (i, k) in ks.iter().enumerate() {
        if let Some(l) = &spec.orders[i] {
            if BigInt::from(2) * k.abs() > *l {
                k_ok = false;
            }
        }
    }
    rep.check("|k_i| <= l_i/2", k_ok, "");

    let mut expr = Expr::from_word(tilde);
    let mut word_len = tilde.len().clone();
    for (i, k) in ks.iter().enumerate() {
        if !k.is_zero() {
            expr.push_word(&us[i].pow(k)?);
            word_len += us[i].len() * k.magnitude();
        }
    }
    if rep.has_failure() {
        return Ok(AuditReport {
            outcome: AuditOutcome::HypothesisFailed,
            report: rep,
            word_len,
            norm: None,
            constant,
            ratio: None,
        });
    }
    let u = expr.reduce()?;
    let norm = bfs_norm(&u, spec, cfg)?;
    let len = rat(&word_len);
    let (outcome, ratio) = match norm {
        NormResult::Exact(n) => {
            let n = BigRational::from_integer(n.into());
            let ok = len <= &constant * &n;
            let ratio = if n.is_zero() { None } else { Some(&len / &n) };
            (if ok { AuditOutcome::Pass } else { AuditOutcome::Violation }, ratio)
        }
        NormResult::ExceedsCap { lower_bound, .. } => {
            let lb = BigRational::from_integer(lower_bound.into());
            let ratio = if lb.is_zero() { None } else { Some(&len / &lb) };
            if len <= &constant * &lb {
                (AuditOutcome::Pass, ratio)
            } else {
                (AuditOutcome::Inconclusive, ratio)
            }
        }
    };
    let prov = match norm {
        NormResult::Exact(_) => Provenance::Computed,
        NormResult::ExceedsCap { .. } => Provenance::CapLimited,
    };
    let status = match outcome {
        AuditOutcome::Pass => Status::Pass,
        AuditOutcome::Inconclusive => Status::Inconclusive,
        _ => Status::Fail,
    };
    let shown = ratio.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "-".into());
    rep.push(
        "|u| <= 3/(1-12 lambda) ||u||",
        status,
        format!("|u| = {word_len}, norm {norm}, constant {constant}, ratio {shown}"),
        Some(prov),
    );
    Ok(AuditReport { outcome, report: rep, word_len, norm: Some(norm), constant, ratio })
}
