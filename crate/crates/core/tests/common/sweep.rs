//! Corpus sweep for the diagram operations. Library results are rechecked
//! with the raw-table oracles in `diagrams`.

use super::diagrams::{counts, has_cancel_pair, star_table, Raw, RawDart};
use super::inverse;
use num_rational::BigRational;
use smallcancel::vkd::*;
use smallcancel::Error;

fn letters(s: &str) -> Vec<i32> {
    s.split_whitespace().map(|c| (c.as_bytes()[0] - b'a' + 1) as i32).collect()
}

pub const U: &str = "c b b a a a b a a c a c a a a c c b c a b a b b";
pub const V: &str = "b c c c a c b a c a b c c a b b b c c b b b a c";

pub fn h_relators() -> Vec<Vec<i32>> {
    vec![letters(U), letters(V)]
}

pub fn g_relators() -> Vec<Vec<i32>> {
    let (u, v) = (letters(U), letters(V));
    let mut out = Vec::new();
    for (s, x) in [(1, &u), (1, &v)] {
        let mut w = vec![s];
        w.extend(x);
        w.push(-s);
        w.extend(inverse(x));
        out.push(w);
    }
    out.push(u.iter().cycle().take(u.len() * 3).copied().collect());
    let mut w = u.clone();
    w.extend(inverse(&v));
    out.push(w);
    out.push(u);
    out.push(v);
    out
}

pub fn raw(d: &Diagram) -> Raw {
    Raw {
        vertices: d.vertices,
        darts: d
            .darts
            .iter()
            .map(|r| RawDart {
                twin: r.twin,
                next: r.next,
                origin: r.origin,
                reads: match r.label {
                    None => 0,
                    Some(s) => {
                        let l = s as i32 + 1;
                        if r.dir == smallcancel::words::Sign::Pos {
                            l
                        } else {
                            -l
                        }
                    }
                },
            })
            .collect(),
        base: d.base,
    }
}

#[derive(Debug, Default)]
pub struct Sweep {
    pub diagrams: usize,
    pub checks: usize,
    pub violations: Vec<String>,
    pub unsupported: usize,
    pub op1: usize,
    pub op2: usize,
    pub op3: usize,
    pub op4: usize,
    pub op5: usize,
    pub normalized: usize,
    pub greendlinger: usize,
    pub perimeter: usize,
}

impl Sweep {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

fn cyc_reduced(w: &[i32]) -> bool {
    super::naive_cyclic_reduce(w).len() == w.len()
}

/// Structural contract shared by every operation: genus 0 and valid faces.
fn wellformed(s: &mut Sweep, name: &str, what: &str, d: &Diagram, rels: &[Vec<i32>]) {
    let r = raw(d);
    s.check(r.euler() == 2, || format!("{name}: {what}: V-E+F = {}", r.euler()));
    let c = counts(&r, rels);
    s.check(c.invalid == 0, || format!("{name}: {what}: {} invalid faces", c.invalid));
}

pub fn run_sweep(seed: u64) -> Sweep {
    let (entries, _) = generate_corpus(seed).expect("corpus");
    let h = RelatorTable::new(&builtin_presentation("corpus").unwrap()).unwrap();
    let g = RelatorTable::new(&builtin_presentation("corpus-g").unwrap()).unwrap();
    let (hr, gr) = (h_relators(), g_relators());
    let seventh = BigRational::new(1.into(), 7.into());
    let mut s = Sweep::default();
    for e in &entries {
        s.diagrams += 1;
        let (table, rels) = if e.diagram.presentation == "corpus-g" { (&g, &gr) } else { (&h, &hr) };
        let name = &e.name;
        let d = &e.diagram;
        let rd = raw(d);
        let before = counts(&rd, rels);
        let bword = rd.boundary_word();
        s.check(validate_diagram(d, table).all_pass(), || format!("{name}: invalid"));
        wellformed(&mut s, name, "input", d, rels);

        // Operation 1 on the first 1-edge
        if let Some(x) = (0..d.darts.len()).find(|&x| d.darts[x].label.is_none()) {
            match op_remove_inessential_edge(d, table, x) {
                Ok(o) => {
                    s.op1 += 1;
                    wellformed(&mut s, name, "op1", &o, rels);
                    let ro = raw(&o);
                    s.check(ro.boundary_word() == bword, || format!("{name}: op1 boundary"));
                    s.check(counts(&ro, rels).sigma == before.sigma, || format!("{name}: op1 sigma"));
                }
                Err(err) => s.check(false, || format!("{name}: op1 refused: {err}")),
            }
        }

        // Operation 3 on the first repeated vertex
        let faces = rd.faces();
        let spot = faces.iter().enumerate().find_map(|(fi, c)| {
            let mut seen = std::collections::BTreeMap::new();
            for &x in c {
                *seen.entry(rd.darts[x].origin).or_insert(0) += 1;
            }
            seen.into_iter().find(|&(_, k)| k > 1).map(|(v, _)| (fi, v))
        });
        if let Some((fi, v)) = spot {
            // a dart of the face away from v keeps its id and its face
            let keep =
                faces[fi].iter().copied().find(|&x| rd.darts[x].origin != v && rd.darts[rd.darts[x].twin].origin != v);
            let lib_face = d.faces().face_of[faces[fi][0]];
            match op_pad_vertex(d, table, v, lib_face) {
                Ok(o) => {
                    s.op3 += 1;
                    wellformed(&mut s, name, "op3", &o, rels);
                    let ro = raw(&o);
                    let after = counts(&ro, rels);
                    s.check(ro.boundary_word() == bword, || format!("{name}: op3 boundary"));
                    s.check(after.kappa == before.kappa && after.sigma == before.sigma, || {
                        format!("{name}: op3 counts")
                    });
                    if let Some(keep) = keep {
                        let fc = ro.faces().into_iter().find(|c| c.contains(&keep)).unwrap();
                        s.check(ro.repeats(&fc) + 1 == rd.repeats(&faces[fi]), || format!("{name}: op3 repeats"));
                    }
                    // new inessential faces all read 1 s s⁻¹
                    s.check(after.inessential == before.inessential + 2 * d.rotation(v).len(), || {
                        format!("{name}: op3 thin faces")
                    });
                }
                Err(Error::Unsupported(_)) => s.unsupported += 1,
                Err(err) => s.check(false, || format!("{name}: op3 refused: {err}")),
            }
        }

        // Operation 2 on a canceling pair
        if table.cprime(&BigRational::new(1.into(), 6.into())).unwrap() {
            if let Some(&(f1, f2, _)) = cancel_pairs(d, table).first() {
                if let Ok((o, dart)) = op_remove_trivial_subdiagram(d, table, &[f1, f2]) {
                    s.op2 += 1;
                    wellformed(&mut s, name, "op2", &o, rels);
                    let folded = op_fold_face(&o, table, dart);
                    s.check(folded.is_ok(), || format!("{name}: fold refused"));
                    if let Ok(fo) = folded {
                        let rf = raw(&fo);
                        wellformed(&mut s, name, "fold", &fo, rels);
                        s.check(rf.boundary_word() == bword, || format!("{name}: op2 boundary"));
                        s.check(counts(&rf, rels).sigma == before.sigma, || format!("{name}: op2 sigma"));
                    }
                }
            }
        }

        // Operation 4 on the first simple template face
        if e.diagram.presentation == "corpus-g" {
            let lf = d.faces();
            let target = lf.bounded().find_map(|f| match table.classify(&d.face_word(&lf, f)) {
                FaceKind::Essential { relator, sign }
                    if relator < CORPUS_G_TEMPLATED && d.is_simple_cycle(&lf.cycles[f]) =>
                {
                    Some((f, relator, sign))
                }
                _ => None,
            });
            if let Some((f, relator, sign)) = target {
                let tpl = g_template(table, relator, sign).unwrap();
                let tc = counts(&raw(&tpl), rels);
                match op_quotient_face(d, table, f, &tpl) {
                    Ok(o) => {
                        s.op4 += 1;
                        wellformed(&mut s, name, "op4", &o, rels);
                        let ro = raw(&o);
                        let after = counts(&ro, rels);
                        let mut want = before.clone();
                        want.kappa[relator] -= 1;
                        want.sigma[relator] -= sign;
                        for i in 0..rels.len() {
                            want.kappa[i] += tc.kappa[i];
                            want.sigma[i] += tc.sigma[i];
                        }
                        s.check(ro.boundary_word() == bword, || format!("{name}: op4 boundary"));
                        s.check(after.kappa == want.kappa && after.sigma == want.sigma, || {
                            format!("{name}: op4 counts")
                        });
                        let l = CORPUS_G_POWER as i64;
                        s.check((tc.sigma[4] + tc.sigma[5]).rem_euclid(l) == 0, || {
                            format!("{name}: template congruence")
                        });
                    }
                    Err(err) => s.check(false, || format!("{name}: op4 refused: {err}")),
                }
            }
        }

        // Operation 5: grow a relator spike of each sign and excise it
        if !rd.boundary().is_empty() || d.darts.is_empty() {
            let n = rd.boundary().len().max(1);
            let star = star_table(rels);
            for (k, (w, &(ri, sg))) in star.iter().filter(|(w, _)| w.len() == rels[0].len()).take(2).enumerate() {
                let pos = (k * 7) % n;
                let Ok(sp) = attach_spike(d, if d.darts.is_empty() { 0 } else { pos }, w) else {
                    s.check(false, || format!("{name}: spike refused"));
                    continue;
                };
                let first_new = d.darts.len();
                let sp_path = sp.boundary_path();
                let start = sp_path.iter().position(|&x| x == first_new).unwrap();
                let sp = sp.rebased(start);
                let rs = raw(&sp);
                let bc = counts(&rs, rels);
                let sw = rs.boundary_word();
                match op_excise(&sp, table, 0, w.len()) {
                    Ok((o, r, sign)) => {
                        s.op5 += 1;
                        wellformed(&mut s, name, "op5", &o, rels);
                        let ro = raw(&o);
                        let after = counts(&ro, rels);
                        let mut want = bc.clone();
                        want.kappa[ri] += 1;
                        want.sigma[ri] -= sg;
                        s.check(r == ri && sign == -sg, || format!("{name}: op5 reported relator"));
                        s.check(after.kappa == want.kappa && after.sigma == want.sigma, || {
                            format!("{name}: op5 table")
                        });
                        let ow = ro.boundary_word();
                        s.check(ow == sw[w.len()..], || format!("{name}: op5 boundary"));
                        s.check(ow.len() + w.len() == sw.len(), || format!("{name}: op5 length"));
                    }
                    Err(err) => s.check(false, || format!("{name}: op5 refused: {err}")),
                }
            }
        }

        if e.diagram.presentation != "corpus" {
            continue;
        }
        let mut bare_reduced = Vec::new();
        if before.inessential == 0 && !has_cancel_pair(&rd, rels) {
            bare_reduced.push(d.clone());
        }
        if cyc_reduced(&bword) {
            match normalize(d, table, Level::Wlog4, Hypotheses::default()) {
                Ok(o) => {
                    s.normalized += 1;
                    wellformed(&mut s, name, "wlog4", &o, rels);
                    let ro = raw(&o);
                    let after = counts(&ro, rels);
                    s.check(after.inessential == 0, || format!("{name}: wlog4 not bare"));
                    s.check(!has_cancel_pair(&ro, rels), || format!("{name}: wlog4 not reduced"));
                    s.check(after.sigma == before.sigma, || format!("{name}: wlog4 sigma"));
                    s.check(ro.boundary_word() == bword, || format!("{name}: wlog4 boundary"));
                    bare_reduced.push(o);
                }
                Err(Error::Unsupported(m)) => {
                    s.unsupported += 1;
                    s.check(false, || format!("{name}: wlog4 unsupported: {m}"));
                }
                Err(err) => s.check(false, || format!("{name}: wlog4 refused: {err}")),
            }
        }
        for o in &bare_reduced {
            let ro = raw(o);
            let faces = ro.bounded_faces();
            let bw = ro.boundary_word();
            if !faces.is_empty() && cyc_reduced(&bw) {
                s.greendlinger += 1;
                match greendlinger_check(o, table) {
                    Ok(GreendlingerOutcome::Face { dart, shared, length, .. }) => {
                        let path = ro.boundary();
                        let f = faces.iter().find(|c| c.contains(&dart)).unwrap();
                        // longest run of f that the boundary walks consecutively
                        let best = (0..f.len())
                            .map(|i| {
                                let mut k = 0;
                                while k < f.len() {
                                    let a = f[(i + k) % f.len()];
                                    let Some(p) = path.iter().position(|&x| x == a) else { break };
                                    if k > 0 {
                                        let prev = f[(i + k - 1) % f.len()];
                                        let q = path.iter().position(|&x| x == prev).unwrap();
                                        if (q + 1) % path.len() != p {
                                            break;
                                        }
                                    }
                                    k += 1;
                                }
                                k
                            })
                            .max()
                            .unwrap_or(0);
                        s.check(length == f.len() && best >= shared && 2 * shared > length, || {
                            format!("{name}: greendlinger face run {best}/{}", f.len())
                        });
                    }
                    other => s.check(false, || format!("{name}: greendlinger {other:?}")),
                }
            }
            s.perimeter += 1;
            let ps: usize = faces.iter().map(|c| ro.word(c).len()).sum();
            s.check(7 * bw.len() >= ps, || format!("{name}: perimeter oracle PS={ps} |dM|={}", bw.len()));
            match perimeter_check(o, table, &seventh) {
                Ok(rep) => s.check(rep.all_pass(), || format!("{name}: perimeter {rep}")),
                Err(err) => s.check(false, || format!("{name}: perimeter refused: {err}")),
            }
            let geo = faces_are_disks(o);
            s.check(geo.all_pass(), || format!("{name}: geometry {geo}"));
        }
    }
    s
}
