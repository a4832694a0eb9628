use super::diagram::{Dart, Diagram, Faces};
use super::{classify_faces, FaceKind, RelatorTable};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::words::{reduce_letters, Letter};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeSet;

pub fn is_bare(d: &Diagram, table: &RelatorTable) -> bool {
    let faces = d.faces();
    let kinds = classify_faces(d, &faces, table);
    let bare = faces.bounded().all(|f| matches!(kinds[f], FaceKind::Essential { .. }));
    bare
}

/// Canceling pairs `(F, F′, dart)`: distinct essential faces across the edge
/// of `dart` whose labels read from its endpoints are mirror images.
pub fn cancel_pairs(d: &Diagram, table: &RelatorTable) -> Vec<(usize, usize, Dart)> {
    let faces = d.faces();
    let kinds = classify_faces(d, &faces, table);
    let mut pos = vec![0; d.darts.len()];
    for c in &faces.cycles {
        for (i, &x) in c.iter().enumerate() {
            pos[x] = i;
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for x in 0..d.darts.len() {
        let (f, g) = (faces.face_of[x], faces.face_of[d.twin(x)]);
        if f == g || f == faces.outer || g == faces.outer {
            continue;
        }
        if !matches!(kinds[f], FaceKind::Essential { .. }) || !matches!(kinds[g], FaceKind::Essential { .. }) {
            continue;
        }
        let (cf, cg) = (&faces.cycles[f], &faces.cycles[g]);
        if cf.len() != cg.len() {
            continue;
        }
        let n = cf.len();
        let pf = pos[x];
        let pg = pos[d.twin(x)];
        // F read ccw from x against F′ read cw from origin(x)
        let mirrored = (0..n).all(|i| {
            let a = d.reading(cf[(pf + i) % n]);
            let b = d.reading(cg[(pg + n - i) % n]).map(|l| -l);
            a == b
        });
        if mirrored && seen.insert((f.min(g), f.max(g))) {
            out.push((f.min(g), f.max(g), x));
        }
    }
    out
}

pub fn is_reduced(d: &Diagram, table: &RelatorTable) -> bool {
    cancel_pairs(d, table).is_empty()
}

/// Every bounded face simple, and every pair of bounded faces meeting in
/// two or more vertices meets along one run of shared edges.
pub fn faces_are_disks(d: &Diagram) -> Report {
    let faces = d.faces();
    let mut rep = Report::new("face geometry");
    let bounded: Vec<usize> = faces.bounded().collect();
    let mut simple = true;
    for &f in &bounded {
        if !d.is_simple_cycle(&faces.cycles[f]) {
            simple = false;
            rep.fail(format!("face at dart {}", faces.cycles[f][0]), "not simple");
        }
    }
    rep.check("faces simple", simple, format!("{} faces", bounded.len()));
    let verts: Vec<BTreeSet<usize>> = faces.cycles.iter().map(|c| c.iter().map(|&x| d.origin(x)).collect()).collect();
    let mut pairs = 0;
    let mut bad = None;
    for (i, &f) in bounded.iter().enumerate() {
        for &g in &bounded[i + 1..] {
            let shared: BTreeSet<usize> = verts[f].intersection(&verts[g]).copied().collect();
            if shared.len() < 2 {
                continue;
            }
            pairs += 1;
            if !intersect_simply(d, &faces, f, g, &shared) && bad.is_none() {
                bad = Some((faces.cycles[f][0], faces.cycles[g][0]));
            }
        }
    }
    match bad {
        None => rep.pass("pairs intersect simply", format!("{pairs} touching pairs")),
        Some((a, b)) => rep.fail("pairs intersect simply", format!("faces at darts {a} and {b}")),
    }
    rep
}

fn intersect_simply(d: &Diagram, faces: &Faces, f: usize, g: usize, shared: &BTreeSet<usize>) -> bool {
    let c = &faces.cycles[f];
    let n = c.len();
    let on: Vec<bool> = c.iter().map(|&x| faces.face_of[d.twin(x)] == g).collect();
    let count = on.iter().filter(|&&b| b).count();
    if count == 0 {
        return false;
    }
    // one cyclic run
    let starts = (0..n).filter(|&i| on[i] && !on[(i + n - 1) % n]).count();
    if count < n && starts != 1 {
        return false;
    }
    let mut run_verts = BTreeSet::new();
    for i in 0..n {
        if on[i] {
            run_verts.insert(d.origin(c[i]));
            run_verts.insert(d.head(c[i]));
        }
    }
    &run_verts == shared
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreendlingerOutcome {
    /// A face sharing `shared` consecutive edges with the boundary, more than
    /// half its length.
    Face {
        face: usize,
        dart: Dart,
        shared: usize,
        length: usize,
    },
    NotApplicable(String),
    /// No face qualifies although the hypotheses hold; `best` is the longest
    /// shared run found.
    Violation {
        best: usize,
    },
}

fn cyclically_reduced(w: &[Letter]) -> bool {
    reduce_letters(w).len() == w.len() && (w.len() < 2 || w[0] != -w[w.len() - 1])
}

pub fn greendlinger_check(d: &Diagram, table: &RelatorTable) -> Result<GreendlingerOutcome> {
    let faces = d.faces();
    if faces.count() == 1 {
        return Ok(GreendlingerOutcome::NotApplicable("no bounded faces".into()));
    }
    if !is_bare(d, table) {
        return Err(Error::Precondition("diagram is not bare".into()));
    }
    if !is_reduced(d, table) {
        return Err(Error::Precondition("diagram is not reduced".into()));
    }
    if !table.cprime(&BigRational::new(BigInt::one(), BigInt::from(6)))? {
        return Err(Error::Precondition("presentation is not C'(1/6)".into()));
    }
    if !cyclically_reduced(&d.boundary_word()) {
        return Err(Error::Precondition("boundary label is not cyclically reduced".into()));
    }
    let path = d.boundary_path();
    let mut at = vec![usize::MAX; d.darts.len()];
    for (i, &x) in path.iter().enumerate() {
        at[x] = i;
    }
    let m = path.len();
    let mut best = 0;
    for f in faces.bounded() {
        let c = &faces.cycles[f];
        let n = c.len();
        let linked = |i: usize| {
            let (a, b) = (c[i], c[(i + 1) % n]);
            at[a] != usize::MAX && at[b] != usize::MAX && (at[a] + 1) % m == at[b]
        };
        let run = if (0..n).all(linked) {
            n
        } else {
            let mut r = 0;
            for s in 0..n {
                if at[c[s]] == usize::MAX || linked((s + n - 1) % n) {
                    continue;
                }
                let mut len = 1;
                while linked((s + len - 1) % n) {
                    len += 1;
                }
                r = r.max(len);
            }
            r
        };
        best = best.max(run);
        if 2 * run > n {
            return Ok(GreendlingerOutcome::Face { face: f, dart: c[0], shared: run, length: n });
        }
    }
    Ok(GreendlingerOutcome::Violation { best })
}

/// `(1 − 6λ) PS(M) ≤ ℓ(∂M)` for a bare reduced diagram over C'(λ).
pub fn perimeter_check(d: &Diagram, table: &RelatorTable, lambda: &BigRational) -> Result<Report> {
    if lambda > &BigRational::new(BigInt::one(), BigInt::from(6)) {
        return Err(Error::Precondition(format!("λ = {lambda} exceeds 1/6")));
    }
    if !is_bare(d, table) {
        return Err(Error::Precondition("diagram is not bare".into()));
    }
    if !is_reduced(d, table) {
        return Err(Error::Precondition("diagram is not reduced; the bound needs reducedness".into()));
    }
    if !table.cprime(lambda)? {
        return Err(Error::Precondition(format!("presentation is not C'({lambda})")));
    }
    let faces = d.faces();
    let ps: usize = faces.bounded().map(|f| d.face_word(&faces, f).len()).sum();
    let boundary = d.boundary_word().len();
    let lhs =
        (BigRational::one() - BigRational::from_integer(6.into()) * lambda) * BigRational::from_integer(ps.into());
    let rhs = BigRational::from_integer(boundary.into());
    let mut rep = Report::new("perimeter sum");
    rep.check("(1 - 6λ) PS <= |∂M|", lhs <= rhs, format!("PS={ps} lhs={lhs} |∂M|={boundary}"));
    Ok(rep)
}
