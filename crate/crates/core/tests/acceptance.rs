//! Acceptance run: one PASS/FAIL line per criterion. Built without the test
//! harness so the lines always reach stdout.

mod common;

use common::quotients;
use common::sweep::run_sweep;
use common::{naive_reduce, streak_piece};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallcancel::families::*;
use smallcancel::presentation::*;
use smallcancel::scalednorm::*;
use smallcancel::words::{max_piece, Alphabet, RleWord};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, Box<dyn std::error::Error>>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), Box<dyn std::error::Error>> {
    if ok {
        Ok(())
    } else {
        Err(msg.into().into())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Distance of `x` from 0 in the cycle `Z_l`.
fn cyc(x: i64, l: i64) -> i64 {
    let r = x.rem_euclid(l);
    r.min(l - r)
}

fn elem(g: &ScaledSum, xs: &[i64]) -> SumElement {
    SumElement::new(g, xs.iter().enumerate().map(|(i, &v)| (i, BigInt::from(v)))).unwrap()
}

fn c1_cprime() -> Outcome {
    let cfg = ConstructionConfig::explicit_example(Dim::Finite(1), Dim::Finite(2), 8)?;
    let h = emit_presentation(&cfg, Target::H)?;
    let u7 = BigUint::from(2u32) * BigUint::from(14u32).pow(cfg.u.p(7)?.to_u32().unwrap() + 1);
    ensure(cfg.u.word(7)?.len() == &u7, "|u_7| is not 2*14^(p_7+1)")?;
    let longest = h.words()?.iter().map(|w| w.len().clone()).max().unwrap();
    let r = check_cprime(&h, &q(1, 13), None)?;
    ensure(r.holds, format!("C'(1/13) fails at {:?}, ratio {}", r.worst_pair, r.max_ratio))?;

    // k = 3 families, every length at most 10^4, against the dense oracle
    let fam = |part, p: &str, n| FamilySpec {
        name: "u".into(),
        kind: FamilyKind::Technical { part, p: Seq::parse(p).unwrap() },
        syms: [0, 1],
        k: 3,
        ell: Seq::rule("3^(i+1)").unwrap(),
        truncation: n,
        dims: (part, Dim::Infinite),
    };
    let mut words = Vec::new();
    for spec in [fam(Dim::Finite(1), "[2,3,4,5,6]", 5), fam(Dim::Finite(2), "[2,3,4,5,6]", 10)] {
        for i in 0..spec.truncation {
            let w = spec.word(i)?.letters()?;
            ensure(w.len() <= 10_000, "shrunk word too long")?;
            let swapped: Vec<i32> = w.iter().map(|&l| l.signum() * (3 - l.abs())).collect();
            words.push(w);
            words.push(swapped);
        }
    }
    let mut pairs = 0;
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            let sym = max_piece(&RleWord::from_letters(u), &RleWord::from_letters(v))?.length.to_usize().unwrap();
            ensure(sym == streak_piece(u, v), format!("piece mismatch on lengths {} / {}", u.len(), v.len()))?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{} pairs hold at max ratio {}, longest relator under 2^{} letters; shrunk cross-check agrees on {pairs}/{pairs} pairs",
        r.pairs_checked,
        r.max_ratio,
        longest.bits()
    ))
}

fn c2_tedious() -> Outcome {
    let configs = [(1, Some(2)), (2, Some(3)), (2, None), (3, Some(5))];
    for (m, n) in configs {
        let (m, n) = (Dim::Finite(m), n.map_or(Dim::Infinite, Dim::Finite));
        let (p, qs) = example_sequences(m, n)?;
        let rep = validate_pq(m, n, &p, &qs, 64);
        ensure(rep.all_pass(), format!("validate_pq (m,n)=({m},{n}): {rep}"))?;
        let rep = validate_family_conditions(&ConstructionConfig::explicit_example(m, n, 16)?);
        ensure(rep.all_pass(), format!("family conditions (m,n)=({m},{n}): {rep}"))?;
    }

    let (m, n) = (Dim::Finite(1), Dim::Finite(2));
    let (_, qs) = example_sequences(m, n)?;
    let rep = validate_pq(m, n, &Seq::rule("5")?, &qs, 64);
    let f = rep.first_failure().ok_or("constant p_j not detected")?;
    ensure(
        f.name.starts_with("(a)") && f.detail.contains("j=0"),
        format!("constant p_j misplaced: {} {}", f.name, f.detail),
    )?;

    let base = ConstructionConfig::explicit_example(m, n, 16)?;
    let mut swapped = base.clone();
    std::mem::swap(&mut swapped.u, &mut swapped.v);
    let rep = validate_family_conditions(&swapped);
    ensure(rep.failures().any(|c| c.name.starts_with("(c)")), "swapped families not detected")?;

    let mut flat = base.clone();
    if let FamilyKind::Technical { p, .. } = &mut flat.u.kind {
        *p = Seq::rule("9")?;
    }
    let rep = validate_family_conditions(&flat);
    ensure(rep.failures().any(|c| c.name.starts_with("(f)")), "constant family p_j not detected")?;

    let mut wide = base;
    wide.lambda = q(1, 6);
    let rep = validate_family_conditions(&wide);
    let f = rep.first_failure().ok_or("lambda = 1/6 not detected")?;
    ensure(f.name.contains("lambda"), format!("lambda = 1/6 misplaced: {}", f.name))?;
    Ok(format!("{} configurations pass; 4 constructed violations localized", configs.len()))
}

fn c3_norm_bounds() -> Outcome {
    // l = (2,4,...,64), s_{i+1} = 2 s_i floor(l_i/2)
    let orders: Vec<u64> = (1..=6).map(|i| 1u64 << i).collect();
    let mut s = vec![1u64];
    for i in 0..5 {
        s.push(2 * s[i] * (orders[i] / 2));
    }
    let g = ScaledSum::cyclic(&orders, &s)?;
    ensure(qu_hypotheses(&g).all_pass(), "tight group misses the hypotheses")?;
    let rep = check_norm_equivalences(&g, 1000, 7);
    ensure(rep.all_pass(), format!("{rep}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for _ in 0..1000 {
        let xs: Vec<i64> = orders.iter().map(|&l| rng.gen_range(0..l as i64)).collect();
        let d: Vec<i64> = xs.iter().zip(&orders).map(|(&x, &l)| cyc(x, l as i64)).collect();
        let n: i64 = d.iter().zip(&s).map(|(&c, &w)| c * w as i64).sum();
        let qu = d.iter().zip(&s).rev().find(|(&c, _)| c != 0).map_or(0, |(&c, &w)| c * w as i64);
        let x = elem(&g, &xs);
        ensure(
            norm_induced(&x, &g) == rat(n) && norm_qu(&x, &g)? == rat(qu),
            "norm disagrees with the hand computation",
        )?;
        ensure(qu <= n && n <= 2 * qu, format!("qu <= s <= 2qu fails at {xs:?}"))?;
        checked += 1;
    }

    let scal = [q(1, 4), q(7, 3), rat(5)];
    let ls = [9i64, 11, 13];
    let g = ScaledSum::new(ls.iter().map(|&l| Order::finite(l as u64)).collect(), scal.to_vec())?;
    let rep = check_norm_equivalences(&g, 1000, 3);
    let ceil_line = rep.checks.iter().find(|c| c.name.contains("ceil")).ok_or("no ceiling line")?;
    ensure(ceil_line.status == smallcancel::report::Status::Pass, format!("{rep}"))?;
    let eps = q(1, 4);
    let ceilg = g.ceiling();
    for _ in 0..1000 {
        let xs: Vec<i64> = ls.iter().map(|&l| rng.gen_range(0..l)).collect();
        let d: Vec<BigRational> = xs.iter().zip(&ls).map(|(&x, &l)| rat(cyc(x, l))).collect();
        let n: BigRational = d.iter().zip(&scal).map(|(c, w)| c * w).sum();
        let nc: BigRational = d.iter().zip(&scal).map(|(c, w)| c * w.ceil()).sum();
        let x = elem(&g, &xs);
        ensure(norm_induced(&x, &g) == n && norm_induced(&x, &ceilg) == nc, "ceiling norm disagrees")?;
        ensure(n <= nc && nc <= (rat(1) + rat(1) / &eps) * &n, format!("ceiling bound fails at {xs:?}"))?;
    }

    let bad = ScaledSum::cyclic(&[5, 7], &[1, 1])?;
    let (w, n, qu) = two_coordinate_witness(&bad)?.ok_or("no witness on the violating configuration")?;
    let (a, b) = (w.get(0).to_i64().unwrap(), w.get(1).to_i64().unwrap());
    let (hn, hq) = (cyc(a, 5) + cyc(b, 7), if cyc(b, 7) != 0 { cyc(b, 7) } else { cyc(a, 5) });
    ensure(n == rat(hn) && qu == rat(hq) && hn > 2 * hq, "witness does not recheck")?;
    Ok(format!("{checked} + 1000 samples clean; witness ({a},{b}) with s = {hn} > 2*{hq}"))
}

/// Weighted distance from 0 in the Cayley graph of `Z_a ⊕ Z_b`.
fn dijkstra(a: usize, b: usize, s: [u64; 2]) -> Vec<u64> {
    let mut dist = vec![u64::MAX; a * b];
    let mut heap = BinaryHeap::new();
    dist[0] = 0;
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        let (x, y) = (v / b, v % b);
        for (nx, ny, c) in
            [((x + 1) % a, y, s[0]), ((x + a - 1) % a, y, s[0]), (x, (y + 1) % b, s[1]), (x, (y + b - 1) % b, s[1])]
        {
            let w = nx * b + ny;
            if d + c < dist[w] {
                dist[w] = d + c;
                heap.push(Reverse((d + c, w)));
            }
        }
    }
    dist
}

fn c4_graph_oracle() -> Outcome {
    let mut checked = 0;
    for s in [[1u64, 1], [1, 3], [2, 5], [7, 1]] {
        let dist = dijkstra(5, 7, s);
        let g = ScaledSum::cyclic(&[5, 7], &s)?;
        for x in 0..5 {
            for y in 0..7 {
                let n = norm_induced(&elem(&g, &[x, y]), &g);
                ensure(n == rat(dist[(x * 7 + y) as usize] as i64), format!("s={s:?} at ({x},{y})"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} elements over 4 scalings match, 35 per scaling"))
}

fn c5_cubes() -> Outcome {
    let mut out = Vec::new();
    for (n, k, l) in [(2usize, 2u64, 4i64), (3, 2, 6), (4, 1, 2), (3, 4, 9)] {
        let g = ScaledSum::cyclic(&vec![l as u64; n + 1], &vec![5; n + 1])?;
        let block: Vec<usize> = (1..=n).collect();
        let c = cube_embedding(&g, &block, 5, k, n)?;
        ensure((k + 1).pow(n as u32) <= 10_000 && c.points.len() as u64 == (k + 1).pow(n as u32), "cube size")?;
        ensure(c.certified(), format!("(n,k)=({n},{k}) has {:?} mismatches", c.mismatches))?;
        // recheck every pair from the embedded elements
        let coords: Vec<Vec<i64>> =
            c.points.iter().map(|p| block.iter().map(|&i| p.element.get(i).to_i64().unwrap()).collect()).collect();
        for (p, xs) in c.points.iter().zip(&coords) {
            ensure(p.coords.iter().zip(xs).all(|(&a, &b)| a as i64 == b), "point coordinates")?;
        }
        let mut mism = 0;
        for a in 0..coords.len() {
            for b in a + 1..coords.len() {
                let d: i64 = coords[a].iter().zip(&coords[b]).map(|(x, y)| 5 * cyc(x - y, l)).sum();
                let l1: i64 = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x - y).abs()).sum();
                if d != 5 * l1 {
                    mism += 1;
                }
            }
        }
        ensure(mism == 0, format!("(n,k)=({n},{k}): {mism} independent mismatches"))?;
        out.push(format!("({n},{k}) {} pairs", c.pairs_checked));
    }
    Ok(format!("zero mismatches: {}", out.join(", ")))
}

fn c6_dehn() -> Outcome {
    let p = Presentation::from_strs(&["a", "x"], &["(a^2 x^2)^8"])?;
    let rels = DehnRelators::new(&p)?;
    let quots = quotients::a2x2_power8(5, &[17, 41, 73, 89, 97, 113], 2);
    let mut reduced: HashSet<Vec<i32>> = HashSet::new();
    let letters = [1, -1, 2, -2];
    let mut raw = 0u64;
    for len in 0..=10u32 {
        for idx in 0..4u64.pow(len) {
            let mut w = Vec::with_capacity(len as usize);
            let mut r = idx;
            for _ in 0..len {
                w.push(letters[(r % 4) as usize]);
                r /= 4;
            }
            reduced.insert(naive_reduce(&w));
            raw += 1;
        }
    }
    let (mut disagree, mut uncertified) = (0, 0);
    for w in &reduced {
        let solver = dehn_reduce_letters(w, &rels).is_trivial();
        if w.is_empty() {
            disagree += usize::from(!solver);
            continue;
        }
        let separated = quots.iter().any(|q| !q.is_identity(w));
        match (solver, separated) {
            (true, true) => disagree += 1,
            (false, false) => uncertified += 1,
            _ => {}
        }
    }
    ensure(disagree == 0 && uncertified == 0, format!("{disagree} disagreements, {uncertified} uncertified"))?;
    Ok(format!("{raw} words, {} distinct after reduction, 0 disagreements", reduced.len()))
}

fn c7_quasigeodesic() -> Outcome {
    let ax = Alphabet::new(["a", "x"])?;
    let u0 = ax.parse_word("(a x)^13")?;
    let spec = CentralExtSpec::a_type(ax.clone(), vec![u0.clone()], vec![BigInt::from(2)])?;
    let cfg = BfsConfig { radius: 8, ..BfsConfig::default() };
    let n = bfs_norm(&u0, &spec, &cfg)?;
    let lower = match n {
        NormResult::Exact(v) => v,
        NormResult::ExceedsCap { lower_bound, .. } => lower_bound,
    };
    ensure(lower >= 8, format!("BFS found ‖ū₀‖ = {n}"))?;

    // independent: no reduced word of length <= 7 has the image of u0
    let quots = quotients::ax13_central(11, &[53, 79, 131, 157], 3);
    let u0l = u0.letters()?;
    let z26 =
        |w: &[i32]| w.iter().map(|&l| if l.abs() == 1 { l.signum() as i64 } else { 0 }).sum::<i64>().rem_euclid(26);
    let target: Vec<_> = quots.iter().map(|q| q.image(&u0l)).collect();
    let mut level = vec![Vec::<i32>::new()];
    let mut seen = 1;
    for _ in 0..=7 {
        for w in &level {
            let same = z26(w) == z26(&u0l) && quots.iter().zip(&target).all(|(q, t)| q.image(w) == *t);
            ensure(!same, format!("word {w:?} not separated from u0"))?;
        }
        let mut next = Vec::new();
        for w in &level {
            for l in [1, -1, 2, -2] {
                if w.last() != Some(&-l) {
                    let mut c = w.clone();
                    c.push(l);
                    next.push(c);
                }
            }
        }
        seen += next.len();
        level = next;
    }

    let lam = q(1, 13);
    let mut ratios = Vec::new();
    for (label, tilde) in [("u0", "e"), ("u0 x", "x"), ("x^3 u0", "x^3")] {
        let t = ax.parse_word(tilde)?;
        let r = quasigeodesic_audit(&t, &[BigInt::from(1)], &spec, &lam, &BfsConfig::default())?;
        ensure(r.outcome == AuditOutcome::Pass, format!("{label}: {}", r.report))?;
        ratios.push(format!("{label} ratio {}", r.ratio.map_or("n/a".into(), |q| q.to_string())));
    }
    Ok(format!("‖ū₀‖ >= {lower}; {} short words separated; audits pass ({})", seen - level.len(), ratios.join(", ")))
}

fn c8_diagrams() -> Outcome {
    let s = run_sweep(7);
    ensure(s.diagrams >= 200, format!("{} diagrams", s.diagrams))?;
    ensure(s.op1 > 0 && s.op2 > 0 && s.op3 > 0 && s.op4 > 0 && s.op5 > 0, "an operation was never exercised")?;
    ensure(s.normalized > 0 && s.greendlinger > 0 && s.perimeter > 0, "a pipeline check was never exercised")?;
    if let Some(v) = s.violations.first() {
        return Err(format!("{} violations, first: {v}", s.violations.len()).into());
    }
    Ok(format!(
        "{} diagrams, {} checks, 0 violations (ops {}/{}/{}/{}/{}, wlog4 {}, greendlinger {}, perimeter {})",
        s.diagrams, s.checks, s.op1, s.op2, s.op3, s.op4, s.op5, s.normalized, s.greendlinger, s.perimeter
    ))
}

fn c9_phi_length() -> Outcome {
    let shrunk = FamilySpec {
        name: "u".into(),
        kind: FamilyKind::Technical { part: Dim::Finite(1), p: Seq::parse("[2,3,4]")? },
        syms: [0, 1],
        k: 3,
        ell: Seq::rule("3^(i+1)")?,
        truncation: 3,
        dims: (Dim::Finite(1), Dim::Finite(2)),
    };
    let explicit = ConstructionConfig::explicit_example(Dim::Finite(2), Dim::Finite(3), 4)?;
    let ax = Alphabet::new(["a", "x"])?;
    let axby = explicit.alphabet.clone();
    let configs = [
        (shrunk, ax.parse_word("x a^-1")?, 3u64),
        (explicit.u.clone(), axby.parse_word("x a^-1")?, 14),
        (explicit.v.clone(), axby.parse_word("b^2 y")?, 14),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total = 0;
    for (fam, prefix, k) in &configs {
        let ells: Vec<i64> = (0..fam.truncation).map(|i| fam.ell(i).unwrap().to_i64().unwrap()).collect();
        let g = ScaledSum::cyclic(&ells.iter().map(|&l| l as u64).collect::<Vec<_>>(), &vec![1; ells.len()])?;
        let plen = prefix.len().clone();
        for _ in 0..100 {
            let h = rng.gen_range(-20i64..=20);
            let xs: Vec<i64> = ells.iter().map(|&l| rng.gen_range(0..l)).collect();
            let w = phi_word(&BigInt::from(h), &elem(&g, &xs), prefix, fam)?;
            // |u_i| = 2 k^(p_j + 1) for the block j of i
            let mut expected = BigUint::from(h.unsigned_abs()) * &plen;
            for (i, (&x, &l)) in xs.iter().zip(&ells).enumerate() {
                let pj = fam.p(block_index(fam.part().unwrap(), i as u64))?.to_u32().unwrap();
                expected += BigUint::from(cyc(x, l) as u64) * BigUint::from(2u32) * BigUint::from(*k).pow(pj + 1);
            }
            ensure(w.formal_len() == expected, format!("h={h} z={xs:?}: {} != {expected}", w.formal_len()))?;
            total += 1;
        }
    }
    ensure(!configs.is_empty() && total == 100 * configs.len(), "sample count")?;
    Ok(format!("{total} inputs over {} configurations, exact", configs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("C'(1/13) of the k = 14 families", c1_cprime, Some(30)),
        ("p/q and family conditions", c2_tedious, Some(60)),
        ("norm bounds", c3_norm_bounds, None),
        ("norm vs weighted Cayley graph", c4_graph_oracle, None),
        ("cube certificates", c5_cubes, None),
        ("Dehn solver vs quotient oracle", c6_dehn, Some(300)),
        ("quasigeodesic bound", c7_quasigeodesic, Some(300)),
        ("diagram bookkeeping", c8_diagrams, Some(120)),
        ("phi-length identity", c9_phi_length, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let over = limit.is_some_and(|l| took > Duration::from_secs(l));
        let (ok, detail) = match res {
            Ok(Ok(d)) if !over => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; over the {}s limit", limit.unwrap())),
            Ok(Err(e)) => (false, e.to_string()),
            Err(_) => (false, "panicked".into()),
        };
        if !ok {
            failed += 1;
        }
        println!("{} {}. {name}: {detail} [{:.1}s]", if ok { "PASS" } else { "FAIL" }, i + 1, took.as_secs_f64());
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
