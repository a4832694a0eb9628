//! Plain-table diagram oracles: face tracing, boundary reading and κ/σ
//! counting re-derived from the raw dart records.

use super::{inverse, naive_reduce, rotate};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug)]
pub struct RawDart {
    pub twin: usize,
    pub next: usize,
    pub origin: usize,
    /// Letter read along the dart; 0 on a 1-edge.
    pub reads: i32,
}

#[derive(Clone, Debug)]
pub struct Raw {
    pub vertices: usize,
    pub darts: Vec<RawDart>,
    pub base: Option<usize>,
}

impl Raw {
    /// Face cycles: after arriving along `d`, leave along the dart just
    /// clockwise of `twin(d)` at the head.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let n = self.darts.len();
        let mut cw = vec![usize::MAX; n];
        for (d, r) in self.darts.iter().enumerate() {
            cw[r.next] = d;
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                c.push(d);
                d = cw[self.darts[d].twin];
            }
            out.push(c);
        }
        out
    }

    pub fn euler(&self) -> i64 {
        let f = self.faces().len().max(1) as i64;
        let verts: BTreeSet<usize> = self.darts.iter().map(|r| r.origin).collect();
        let v = if self.darts.is_empty() { self.vertices } else { verts.len() } as i64;
        v - (self.darts.len() / 2) as i64 + f
    }

    pub fn outer_face(&self) -> Option<usize> {
        let b = self.base?;
        let t = self.darts[b].twin;
        self.faces().iter().position(|c| c.contains(&t))
    }

    pub fn word(&self, path: &[usize]) -> Vec<i32> {
        path.iter().map(|&d| self.darts[d].reads).filter(|&l| l != 0).collect()
    }

    pub fn boundary(&self) -> Vec<usize> {
        let Some(b) = self.base else { return Vec::new() };
        let mut out = vec![b];
        let mut d = self.darts[self.darts[b].twin].next;
        while d != b {
            out.push(d);
            d = self.darts[self.darts[d].twin].next;
        }
        out
    }

    pub fn boundary_word(&self) -> Vec<i32> {
        self.word(&self.boundary())
    }

    pub fn bounded_faces(&self) -> Vec<Vec<usize>> {
        let outer = self.outer_face();
        self.faces().into_iter().enumerate().filter(|(i, _)| Some(*i) != outer).map(|(_, c)| c).collect()
    }

    pub fn repeats(&self, cycle: &[usize]) -> usize {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &d in cycle {
            *count.entry(self.darts[d].origin).or_default() += 1;
        }
        count.values().filter(|&&c| c > 1).count()
    }
}

/// Every rotation of each relator and its inverse, tagged `(index, sign)`.
pub fn star_table(relators: &[Vec<i32>]) -> HashMap<Vec<i32>, (usize, i64)> {
    let mut t = HashMap::new();
    for (i, r) in relators.iter().enumerate() {
        for s in 0..r.len() {
            t.insert(rotate(r, s), (i, 1));
            t.insert(rotate(&inverse(r), s), (i, -1));
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    pub kappa: Vec<u64>,
    pub sigma: Vec<i64>,
    pub inessential: usize,
    pub invalid: usize,
}

pub fn counts(raw: &Raw, relators: &[Vec<i32>]) -> Counts {
    let star = star_table(relators);
    let mut c = Counts { kappa: vec![0; relators.len()], sigma: vec![0; relators.len()], inessential: 0, invalid: 0 };
    for f in raw.bounded_faces() {
        let w = raw.word(&f);
        if let Some(&(i, s)) = star.get(&w) {
            c.kappa[i] += 1;
            c.sigma[i] += s;
        } else if naive_reduce(&w).is_empty() {
            c.inessential += 1;
        } else {
            c.invalid += 1;
        }
    }
    c
}

/// Whether two distinct essential faces across some edge read as mirror
/// images from that edge.
pub fn has_cancel_pair(raw: &Raw, relators: &[Vec<i32>]) -> bool {
    let star = star_table(relators);
    let faces = raw.bounded_faces();
    let mut face_of = HashMap::new();
    for (i, c) in faces.iter().enumerate() {
        for &d in c {
            face_of.insert(d, i);
        }
    }
    let from = |c: &[usize], d: usize| {
        let p = c.iter().position(|&x| x == d).unwrap();
        let v: Vec<usize> = c[p..].iter().chain(&c[..p]).copied().collect();
        raw.word(&v)
    };
    for (i, c) in faces.iter().enumerate() {
        for &d in c {
            let t = raw.darts[d].twin;
            let Some(&j) = face_of.get(&t) else { continue };
            if i == j || raw.darts[d].reads == 0 {
                continue;
            }
            let (wf, wg) = (from(c, d), from(&faces[j], t));
            if !star.contains_key(&wf) || !star.contains_key(&wg) || wf.len() != wg.len() {
                continue;
            }
            // F from d equals F′ read backwards from the tail of d
            let inv = inverse(&wg);
            if rotate(&inv, inv.len() - 1) == wf {
                return true;
            }
        }
    }
    false
}
