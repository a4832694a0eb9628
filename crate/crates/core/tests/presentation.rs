mod common;

use common::quotients;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use smallcancel::families::{emit_presentation, ConstructionConfig, Dim, Target};
use smallcancel::presentation::*;
use smallcancel::words::{reduce_letters, Alphabet, RleWord};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ax() -> Alphabet {
    Alphabet::new(["a", "x"]).unwrap()
}

fn word(s: &str) -> RleWord {
    ax().parse_word(s).unwrap()
}

/// `⟨a,x ∣ [a,u],[x,u],u²⟩` with `u = (ax)^13`.
fn shrunk() -> CentralExtSpec {
    CentralExtSpec::a_type(ax(), vec![word("(a x)^13")], vec![BigInt::from(2)]).unwrap()
}

/// All reduced words of length ≤ `n` over `k` generators, shortlex.
fn reduced_words(k: i32, n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::<i32>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &level {
            for g in 1..=k {
                for l in [g, -g] {
                    if w.last() != Some(&-l) {
                        let mut c = w.clone();
                        c.push(l);
                        next.push(c);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

#[test]
fn cprime_examples() {
    let cfg = ConstructionConfig::explicit_example(Dim::Finite(1), Dim::Finite(2), 8).unwrap();
    let h = emit_presentation(&cfg, Target::H).unwrap();
    assert!(check_cprime(&h, &q(1, 13), None).unwrap().holds);

    let p = Presentation::from_strs(&["a", "x"], &["(a x)^8", "(a x)^4 x"]).unwrap();
    assert!(!check_cprime(&p, &q(1, 6), None).unwrap().holds);

    let p = Presentation::from_strs(&["a", "x"], &["(a x)^13"]).unwrap();
    let r = check_cprime(&p, &q(1, 1000), None).unwrap();
    assert!(r.holds);
    assert_eq!(r.max_ratio, q(0, 1));
}

#[test]
fn dehn_examples() {
    let p = Presentation::from_strs(&["a", "x"], &["(a^2 x^2)^8"]).unwrap();
    let t = dehn_reduce(&word("(a^2 x^2)^8"), &p).unwrap();
    assert!(t.is_trivial());
    assert_eq!(t.exponents, vec![1]);

    let t = dehn_reduce(&word("a x"), &p).unwrap();
    assert_eq!(t.residual_word(), word("a x"));
    assert!(t.steps.is_empty());

    let t = dehn_reduce(&word("(a^2 x^2)^5"), &p).unwrap();
    assert_eq!(t.residual_word(), word("(a^2 x^2)^-3"));
    assert_eq!(t.exponents, vec![1]);
}

#[test]
fn dehn_refuses_non_c16() {
    let p = Presentation::from_strs(&["a", "x"], &["(a x)^8", "(a x)^4 x"]).unwrap();
    assert!(matches!(dehn_reduce(&word("a"), &p), Err(smallcancel::Error::Refused(_))));
    let dup = Presentation::from_strs(&["a", "x"], &["(a x)^13", "(x a)^13"]).unwrap();
    assert!(matches!(dehn_reduce(&word("a"), &dup), Err(smallcancel::Error::Refused(_))));
}

#[test]
fn proper_factors_of_relators_are_nontrivial() {
    let p =
        Presentation::from_strs(&["a", "x", "b", "y"], &["(a x)^7", "(a^2 x^2)^7", "(b y)^7", "(b^3 y^3)^7"]).unwrap();
    let rels = DehnRelators::new(&p).unwrap();
    for i in 0..rels.relator_count() {
        let r = rels.relator(i).to_vec();
        for s in 0..r.len() {
            for e in s + 1..=r.len() {
                if e - s == r.len() {
                    continue;
                }
                assert!(!dehn_reduce_letters(&r[s..e], &rels).is_trivial(), "relator {i} factor {s}..{e}");
            }
        }
    }
}

proptest! {
    #[test]
    fn dehn_trace_replays(w in proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..60)) {
        let p = Presentation::from_strs(&["a", "x"], &["(a x)^7", "(a^2 x^2)^7"]).unwrap();
        let rels = DehnRelators::new(&p).unwrap();
        let t = dehn_reduce_letters(&w, &rels);
        prop_assert!(t.replay(&w, &rels));
        prop_assert!(t.steps.len() <= w.len());
    }

    /// Inserting conjugates of relators never changes the verdict.
    #[test]
    fn dehn_sees_inserted_relators(
        base in proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..8),
        pos in 0usize..8,
        which in 0usize..2,
        inv in any::<bool>(),
    ) {
        let p = Presentation::from_strs(&["a", "x"], &["(a x)^7", "(a^2 x^2)^7"]).unwrap();
        let rels = DehnRelators::new(&p).unwrap();
        let mut r = rels.relator(which).to_vec();
        if inv {
            r = r.iter().rev().map(|l| -l).collect();
        }
        let base = reduce_letters(&base);
        let cut = pos.min(base.len());
        let mut w = base[..cut].to_vec();
        w.extend(&r);
        w.extend(&base[cut..]);
        let with = dehn_reduce_letters(&w, &rels).is_trivial();
        let without = dehn_reduce_letters(&base, &rels).is_trivial();
        prop_assert_eq!(with, without);
    }
}

#[test]
fn central_ext_examples() {
    let spec = shrunk();
    let u0 = word("(a x)^13");
    assert!(word_problem_central_ext(&u0.pow(&BigInt::from(2)).unwrap(), &spec).unwrap().trivial);
    let comm = ax().parse_word("a (a x)^13 a^-1 (a x)^-13").unwrap();
    assert!(word_problem_central_ext(&comm, &spec).unwrap().trivial);
    let v = word_problem_central_ext(&u0, &spec).unwrap();
    assert!(!v.trivial && v.in_kernel);
    assert_eq!(v.kernel, vec![BigInt::from(1)]);

    // Independent certificate that ū_0 ≠ 1: the quotient a ↦ 1, x ↦ 0 in Z/26.
    let image: i64 = u0.letters().unwrap().iter().map(|&l| if l.abs() == 1 { l.signum() as i64 } else { 0 }).sum();
    assert_ne!(image.rem_euclid(26), 0);
    for q in quotients::ax13_central(7, &[53], 1) {
        assert!(!q.is_identity(&u0.letters().unwrap()));
    }
}

#[test]
fn central_ext_agrees_with_quotients_on_short_pairs() {
    let spec = shrunk();
    let quots = quotients::ax13_central(11, &[53, 79, 131, 157], 3);
    let words = reduced_words(2, 6);
    let images: Vec<Vec<_>> = words.iter().map(|w| quots.iter().map(|q| q.image(w)).collect()).collect();
    let z26 =
        |w: &[i32]| w.iter().map(|&l| if l.abs() == 1 { l.signum() as i64 } else { 0 }).sum::<i64>().rem_euclid(26);
    let mut disagreements = 0;
    let mut uncertified = 0;
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate().skip(i) {
            let solver = spec.equal_letters(a, b).unwrap();
            let separated = images[i] != images[j] || z26(a) != z26(b);
            let freely_equal = reduce_letters(a) == reduce_letters(b);
            match (solver, separated, freely_equal) {
                (true, true, _) | (false, _, true) => disagreements += 1,
                (false, false, false) => uncertified += 1,
                _ => {}
            }
        }
    }
    assert_eq!(disagreements, 0);
    assert_eq!(uncertified, 0);
}

#[test]
fn bfs_examples() {
    let spec = shrunk();
    let cfg = BfsConfig::default();
    assert_eq!(bfs_norm(&RleWord::empty(), &spec, &cfg).unwrap(), NormResult::Exact(0));
    assert_eq!(bfs_norm(&word("a"), &spec, &cfg).unwrap(), NormResult::Exact(1));
    assert_eq!(bfs_norm(&word("a x^-1 a"), &spec, &cfg).unwrap(), NormResult::Exact(3));
    let n = bfs_norm(&word("(a x)^13"), &spec, &cfg).unwrap();
    assert!(matches!(n, NormResult::ExceedsCap { lower_bound: 9, .. }), "{n}");
}

#[test]
fn bfs_respects_state_cap() {
    let spec = shrunk();
    let cfg = BfsConfig { radius: 8, max_states: 50 };
    let n = bfs_norm(&word("a^6"), &spec, &cfg).unwrap();
    assert!(matches!(n, NormResult::ExceedsCap { lower_bound, .. } if lower_bound <= 6), "{n}");
}

#[test]
fn bfs_ball_sizes_match_free_group_below_relator_scale() {
    // Words of length ≤ 6 are pairwise distinct in the shrunk group.
    let spec = shrunk();
    let mut ball = smallcancel::presentation::Ball::new(&spec);
    let mut sizes = Vec::new();
    for _ in 0..6 {
        assert!(ball.grow(100_000).unwrap());
        sizes.push(ball.levels.last().unwrap().len());
    }
    assert_eq!(sizes, vec![4, 12, 36, 108, 324, 972]);
}

#[test]
fn audit_examples() {
    let cfg = BfsConfig::default();
    let lam = q(1, 13);
    let free = CentralExtSpec::free(ax()).unwrap();
    let r = quasigeodesic_audit(&RleWord::empty(), &[], &free, &lam, &cfg).unwrap();
    assert_eq!(r.outcome, AuditOutcome::Pass);
    let r = quasigeodesic_audit(&word("a x^2 a^-1"), &[], &free, &lam, &cfg).unwrap();
    assert_eq!(r.outcome, AuditOutcome::Pass);
    assert_eq!(r.ratio, Some(q(1, 1)));

    let spec = shrunk();
    let r = quasigeodesic_audit(&RleWord::empty(), &[BigInt::from(1)], &spec, &lam, &cfg).unwrap();
    assert_eq!(r.outcome, AuditOutcome::Pass, "{}", r.report);
    assert_eq!(r.constant, q(39, 1));
    assert_eq!(r.ratio, Some(q(26, 9)));
}

#[test]
fn audit_rejects_bad_hypotheses() {
    let cfg = BfsConfig::default();
    let spec = shrunk();
    let r = quasigeodesic_audit(&RleWord::empty(), &[BigInt::from(1)], &spec, &q(1, 6), &cfg).unwrap();
    assert_eq!(r.outcome, AuditOutcome::HypothesisFailed);
    let r = quasigeodesic_audit(&RleWord::empty(), &[BigInt::from(2)], &spec, &q(1, 13), &cfg).unwrap();
    assert_eq!(r.outcome, AuditOutcome::HypothesisFailed);
    let r = quasigeodesic_audit(&word("(a x)^3"), &[], &spec, &q(1, 13), &cfg).unwrap();
    assert_eq!(r.outcome, AuditOutcome::HypothesisFailed);
}

#[test]
fn truncation_bound_is_enforced() {
    let mut cfg = ConstructionConfig::explicit_example(Dim::Finite(1), Dim::Finite(2), 1).unwrap();
    cfg.u.k = 3;
    cfg.v.k = 3;
    cfg.u.kind = smallcancel::families::FamilyKind::L {
        mi: smallcancel::families::Seq::rule("i+1").unwrap(),
        ni: smallcancel::families::Seq::rule("7").unwrap(),
    };
    cfg.v.kind = smallcancel::families::FamilyKind::L {
        mi: smallcancel::families::Seq::rule("i+1").unwrap(),
        ni: smallcancel::families::Seq::rule("8").unwrap(),
    };
    let spec = CentralExtSpec::from_config(&cfg, ExtShape::G).unwrap();
    assert_eq!(spec.next_len, Some(28u32.into()));
    assert!(spec.decide_letters(&[1, 2, 1, 2]).is_ok());
    let long: Vec<i32> = std::iter::repeat_n([1, 2], 8).flatten().collect();
    assert!(matches!(spec.decide_letters(&long), Err(smallcancel::Error::TruncationTooSmall(_))));
}
