//! Built-in presentations for diagram work and a seeded diagram corpus.

use super::diagram::Diagram;
use super::ops::{attach_face, attach_spike, op_excise, op_pad_vertex, op_quotient_face};
use super::templates::{commutator_template, flower_template, link_template};
use super::{ensure_valid, FaceKind, RelatorTable};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::words::{invert_letters, reduce_letters, Letter};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const U: &str = "c b b a a a b a a c a c a a a c c b c a b a b b";
const V: &str = "b c c c a c b a c a b c c a b b b c c b b b a c";

/// Power used by the `corpus-g` relator `u^l`.
pub const CORPUS_G_POWER: usize = 3;

/// `corpus-g` relators below this index have Operation 4 templates.
pub const CORPUS_G_TEMPLATED: usize = 4;

/// Names accepted by [`builtin_presentation`].
pub const BUILTIN_PRESENTATIONS: &[&str] = &["corpus", "corpus-g", "klein2", "abelian2"];

/// `corpus`: two positive words of length 24 whose cyclic 4-windows are all
/// distinct, so every piece has length at most 3.
/// `corpus-g`: `[a,u]`, `[a,v]`, `u^3`, `u v⁻¹`, then `u` and `v`. The
/// relators are picked so that they are cyclically reduced as written.
/// `klein2`: ⟨a,b | a², aba⁻¹b⟩; `abelian2`: ⟨a,b | a², aba⁻¹b⁻¹⟩.
pub fn builtin_presentation(name: &str) -> Option<Presentation> {
    let text = match name {
        "corpus" => format!("alphabet: a b c\n{U}\n{V}\n"),
        "corpus-g" => {
            let mut t = String::from("alphabet: a b c\n");
            t.push_str(&format!("a ({U}) a^-1 ({U})^-1\na ({V}) a^-1 ({V})^-1\n"));
            t.push_str(&format!("({U})^{CORPUS_G_POWER}\n({U}) ({V})^-1\n{U}\n{V}\n"));
            t
        }
        "klein2" => "alphabet: a b\na^2\na b a^-1 b\n".into(),
        "abelian2" => "alphabet: a b\na^2\na b a^-1 b^-1\n".into(),
        _ => return None,
    };
    Some(Presentation::parse(&text).expect("builtin presentation parses"))
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub family: &'static str,
    pub diagram: Diagram,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusStats {
    pub attempts: usize,
    /// Steps abandoned because padding met a loop.
    pub skipped_unsupported: usize,
    pub entries: usize,
}

fn cyclically_reduced(w: &[Letter]) -> bool {
    reduce_letters(w).len() == w.len() && (w.len() < 2 || w[0] != -w[w.len() - 1])
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    table: &'a RelatorTable,
    star: Vec<Vec<Letter>>,
}

impl Gen<'_> {
    fn random_star(&mut self) -> Vec<Letter> {
        self.star.choose(&mut self.rng).expect("nonempty").clone()
    }

    /// Mirror of the face on the left of boundary run `start..start+len`,
    /// when that run lies inside one face.
    fn mirror_word(&self, d: &Diagram, start: usize, len: usize) -> Option<Vec<Letter>> {
        let path = d.boundary_path();
        let faces = d.faces();
        let f = faces.face_of[path[start]];
        let c = &faces.cycles[f];
        let i = c.iter().position(|&x| x == path[start])?;
        let n = c.len();
        if (0..len).any(|k| c[(i + k) % n] != path[(start + k) % path.len()]) {
            return None;
        }
        let w: Vec<Letter> = (0..n).map(|k| d.reading(c[(i + k) % n])).collect::<Option<_>>()?;
        let mut out = invert_letters(&w[..len]);
        out.extend(invert_letters(&w[len..]));
        self.table.lookup(&out).map(|_| out)
    }

    /// Attaches one face from the star along a short boundary run, keeping
    /// the boundary cyclically reduced when `reduced` is set.
    fn grow(&mut self, d: &Diagram, reduced: bool, mirror_bias: f64) -> Option<Diagram> {
        for _ in 0..60 {
            let path = d.boundary_path();
            let n = path.len();
            if n == 0 {
                let w = self.random_star();
                return attach_face(d, 0, 0, &w).ok();
            }
            let start = self.rng.gen_range(0..n);
            let len = self.rng.gen_range(0..=3usize).min(n - 1);
            let sigma: Vec<Letter> = (0..len).filter_map(|k| d.reading(path[(start + k) % n])).collect();
            if sigma.len() != len {
                continue;
            }
            let want = invert_letters(&sigma);
            let word = if len > 0 && self.rng.gen_bool(mirror_bias) {
                match self.mirror_word(d, start, len) {
                    Some(w) => w,
                    None => continue,
                }
            } else {
                let cands: Vec<&Vec<Letter>> = self.star.iter().filter(|w| w.starts_with(&want)).collect();
                match cands.choose(&mut self.rng) {
                    Some(w) => (*w).clone(),
                    None => continue,
                }
            };
            let Ok(next) = attach_face(d, start, len, &word) else {
                continue;
            };
            if reduced && !cyclically_reduced(&next.boundary_word()) {
                continue;
            }
            if ensure_valid(&next, self.table).is_err() {
                continue;
            }
            return Some(next);
        }
        None
    }

    fn grown(&mut self, faces: usize, reduced: bool, mirror_bias: f64) -> Option<Diagram> {
        let mut d = Diagram::point("");
        for _ in 0..faces {
            d = self.grow(&d, reduced, mirror_bias)?;
        }
        Some(d)
    }
}

fn named(mut d: Diagram, name: &str) -> Diagram {
    d.presentation = name.to_string();
    d
}

/// Pads a random repeated vertex of a random face. `None` when no face has
/// a repeated vertex; an error when the vertex carries a loop.
fn pad_random(rng: &mut ChaCha8Rng, d: &Diagram, table: &RelatorTable) -> Option<Result<Diagram>> {
    let faces = d.faces();
    let mut spots = Vec::new();
    for f in 0..faces.count() {
        for v in d.repeated_vertices(&faces.cycles[f]) {
            spots.push((v, f));
        }
    }
    let &(v, f) = spots.choose(rng)?;
    Some(op_pad_vertex(d, table, v, f))
}

/// Replacement for a face reading a shift of `relator^sign` in `corpus-g`.
pub fn g_template(table: &RelatorTable, relator: usize, sign: i64) -> Result<Diagram> {
    let u = &table.words[4];
    let v = &table.words[5];
    let base = match relator {
        0 => commutator_template("corpus-g", 1, u)?,
        1 => commutator_template("corpus-g", 1, v)?,
        2 => flower_template("corpus-g", u, CORPUS_G_POWER)?,
        3 => link_template("corpus-g", u, v)?,
        _ => return Err(Error::Refused(format!("relator {relator} has no template"))),
    };
    Ok(if sign > 0 { base } else { base.mirror() })
}

/// Quotients every `corpus-g` relator face of `d` to its template, padding
/// non-simple faces first.
pub fn quotient_all(d: &Diagram, table: &RelatorTable) -> Result<Diagram> {
    let mut cur = d.clone();
    for _ in 0..1000 {
        let faces = cur.faces();
        let target = faces.bounded().find_map(|f| match table.classify(&cur.face_word(&faces, f)) {
            FaceKind::Essential { relator, sign } if relator < CORPUS_G_TEMPLATED => Some((f, relator, sign)),
            _ => None,
        });
        let Some((f, relator, sign)) = target else {
            return Ok(cur);
        };
        if let Some(&v) = cur.repeated_vertices(&faces.cycles[f]).first() {
            cur = op_pad_vertex(&cur, table, v, f)?;
            continue;
        }
        cur = op_quotient_face(&cur, table, f, &g_template(table, relator, sign)?)?;
    }
    Err(Error::Refused("quotient loop did not terminate".into()))
}

/// The seeded corpus. Families: `attach` (faces glued along short boundary
/// runs, some deliberately canceling), `mirror`, `parallel` (inessential
/// faces beside a boundary run), `padded`, `excise` (a spike closed up by
/// Operation 5), `g-source` and `g-quotient` (the template pipeline), and a
/// few single faces.
pub fn generate_corpus(seed: u64) -> Result<(Vec<CorpusEntry>, CorpusStats)> {
    let h = RelatorTable::new(&builtin_presentation("corpus").expect("builtin"))?;
    let g = RelatorTable::new(&builtin_presentation("corpus-g").expect("builtin"))?;
    let mut stats = CorpusStats::default();
    let mut out: Vec<CorpusEntry> = Vec::new();
    let push = |out: &mut Vec<CorpusEntry>, family: &'static str, d: Diagram| {
        let name = format!("{family}-{}", out.iter().filter(|e| e.family == family).count());
        out.push(CorpusEntry { name, family, diagram: d });
    };
    let hstar: Vec<Vec<Letter>> = h.star().into_iter().map(|(w, _, _)| w.to_vec()).collect();
    let mut gen = Gen { rng: ChaCha8Rng::seed_from_u64(seed), table: &h, star: hstar };

    push(&mut out, "single", named(Diagram::point(""), "corpus"));
    for w in &h.words {
        for sign in [1, -1] {
            let word = if sign > 0 { w.clone() } else { invert_letters(w) };
            push(&mut out, "single", named(attach_face(&Diagram::point(""), 0, 0, &word)?, "corpus"));
        }
    }

    let mut attach = Vec::new();
    while attach.len() < 70 {
        stats.attempts += 1;
        let k = 1 + attach.len() % 6;
        let bias = if attach.len() % 3 == 0 { 0.5 } else { 0.05 };
        if let Some(d) = gen.grown(k, true, bias) {
            let d = named(d, "corpus");
            attach.push(d.clone());
            push(&mut out, "attach", d);
        }
    }
    for d in attach.iter().take(10) {
        push(&mut out, "mirror", d.mirror());
    }

    let mut parallel = Vec::new();
    for d in attach.iter().cycle().take(200) {
        if parallel.len() >= 25 {
            break;
        }
        stats.attempts += 1;
        let path = d.boundary_path();
        let n = path.len();
        let len = gen.rng.gen_range(1..=2usize).min(n - 1);
        let start = gen.rng.gen_range(0..n);
        let sigma: Vec<Letter> = (0..len).filter_map(|k| d.reading(path[(start + k) % n])).collect();
        let mut word = invert_letters(&sigma);
        word.extend(&sigma);
        let Ok(p) = attach_face(d, start, len, &word) else { continue };
        // one more essential face over the new boundary
        let Some(p) = gen.grow(&p, true, 0.0) else { continue };
        parallel.push(p.clone());
        push(&mut out, "parallel", p);
    }

    let mut padded = 0;
    let sources: Vec<Diagram> = attach.iter().chain(parallel.iter()).cloned().collect();
    for d in sources.iter().cycle().take(400) {
        if padded >= 30 {
            break;
        }
        stats.attempts += 1;
        let mut cur = d.clone();
        let rounds = gen.rng.gen_range(1..=2);
        let mut changed = false;
        for _ in 0..rounds {
            match pad_random(&mut gen.rng, &cur, &h) {
                None => break,
                Some(Err(Error::Unsupported(_))) => {
                    stats.skipped_unsupported += 1;
                    break;
                }
                Some(Err(e)) => return Err(e),
                Some(Ok(p)) => {
                    cur = p;
                    changed = true;
                }
            }
        }
        if changed {
            padded += 1;
            push(&mut out, "padded", cur);
        }
    }

    let mut excised = 0;
    for d in attach.iter().cycle().take(400) {
        if excised >= 30 {
            break;
        }
        stats.attempts += 1;
        let path = d.boundary_path();
        let n = path.len();
        let bw = d.boundary_word();
        if bw.len() != n || n < 24 {
            continue;
        }
        // a spike t with t⁻¹ followed by 23 boundary letters reading a relator
        let j0 = gen.rng.gen_range(0..n);
        let hit = (0..n).map(|k| (j0 + k) % n).find_map(|j| {
            let tail: Vec<Letter> = (0..23).map(|k| bw[(j + k) % n]).collect();
            gen.star.iter().find(|w| w[1..] == tail[..]).map(|w| (j, w[0]))
        });
        let Some((j, first)) = hit else { continue };
        let spiked = attach_spike(d, j, &[-first])?;
        let back = spiked.darts.len() - 1;
        let spath = spiked.boundary_path();
        let pos = spath.iter().position(|&x| x == back).expect("spike on boundary");
        let rebased = spiked.rebased(pos);
        let (e, _, _) = op_excise(&rebased, &h, 0, 24)?;
        excised += 1;
        push(&mut out, "excise", e);
    }

    let gstar: Vec<Vec<Letter>> =
        g.star().into_iter().filter(|&(_, r, _)| r < CORPUS_G_TEMPLATED).map(|(w, _, _)| w.to_vec()).collect();
    let mut ggen = Gen { rng: ChaCha8Rng::seed_from_u64(seed ^ 0x9e37), table: &g, star: gstar };
    let mut gcount = 0;
    while gcount < 20 {
        stats.attempts += 1;
        let k = 1 + gcount % 3;
        let Some(src) = ggen.grown(k, true, 0.0) else { continue };
        let src = named(src, "corpus-g");
        match quotient_all(&src, &g) {
            Ok(q) => {
                push(&mut out, "g-source", src);
                push(&mut out, "g-quotient", named(q, "corpus"));
                gcount += 1;
            }
            Err(Error::Unsupported(_)) => stats.skipped_unsupported += 1,
            Err(e) => return Err(e),
        }
    }
    stats.entries = out.len();
    Ok((out, stats))
}
