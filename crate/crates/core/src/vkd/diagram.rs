use crate::error::{Error, Result};
use crate::words::{letter, letter_sym, Letter, Sign};
use std::collections::BTreeSet;

pub type Dart = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DartRec {
    pub twin: Dart,
    /// Next dart counterclockwise around `origin`.
    pub next: Dart,
    pub origin: usize,
    /// `None` for an edge labeled 1.
    pub label: Option<usize>,
    /// Whether the edge's orientation agrees with this dart.
    pub dir: Sign,
}

/// A planar diagram as a rotation system. The outer face is the face of
/// `twin(base)`; the boundary path starts at `base` and continues with
/// `next(twin(d))`, so it runs counterclockwise with the diagram on its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub presentation: String,
    pub vertices: usize,
    pub darts: Vec<DartRec>,
    pub base: Option<Dart>,
}

/// Face tracing result. Faces are numbered in order of their smallest dart,
/// and each cycle starts there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub face_of: Vec<usize>,
    pub cycles: Vec<Vec<Dart>>,
    pub outer: usize,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    pub fn bounded(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.cycles.len()).filter(move |&f| f != self.outer)
    }
}

impl Diagram {
    /// The one-vertex diagram with boundary label ε.
    pub fn point(presentation: impl Into<String>) -> Diagram {
        Diagram { presentation: presentation.into(), vertices: 1, darts: Vec::new(), base: None }
    }

    /// Builds a diagram from edges and every face cycle, the outer one
    /// included. Dart `2e` runs along edge `e`, dart `2e+1` against it. Each
    /// dart must occur in exactly one cycle; consecutive darts `a, b` in a
    /// cycle give `next(b) = twin(a)`.
    pub fn from_cycles(
        presentation: impl Into<String>,
        edges: &[Option<Letter>],
        cycles: &[Vec<Dart>],
        base: Option<Dart>,
    ) -> Result<Diagram> {
        let n = edges.len() * 2;
        let mut next = vec![usize::MAX; n];
        for c in cycles {
            for (i, &b) in c.iter().enumerate() {
                let a = c[(i + c.len() - 1) % c.len()];
                if a >= n || b >= n {
                    return Err(Error::Parse(format!("dart {} out of range", a.max(b))));
                }
                if next[b] != usize::MAX {
                    return Err(Error::Parse(format!("dart {b} occurs in two cycles")));
                }
                next[b] = a ^ 1;
            }
        }
        if let Some(d) = next.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Parse(format!("dart {d} occurs in no cycle")));
        }
        let darts = (0..n)
            .map(|d| {
                let (label, dir) = match edges[d / 2] {
                    None => (None, Sign::Pos),
                    Some(l) => {
                        let sign = if l > 0 { Sign::Pos } else { Sign::Neg };
                        (Some(letter_sym(l)), if d % 2 == 0 { sign } else { sign.flip() })
                    }
                };
                DartRec { twin: d ^ 1, next: next[d], origin: 0, label, dir }
            })
            .collect();
        let mut d = Diagram { presentation: presentation.into(), vertices: 1, darts, base };
        d.assign_origins();
        let errs = d.structure_errors();
        if !errs.is_empty() {
            return Err(Error::Parse(errs.join("; ")));
        }
        Ok(d)
    }

    /// Renumbers vertices as the orbits of `next`, in order of smallest dart.
    pub(crate) fn assign_origins(&mut self) {
        let mut seen = vec![false; self.darts.len()];
        let mut v = 0;
        for s in 0..self.darts.len() {
            if seen[s] {
                continue;
            }
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                self.darts[d].origin = v;
                d = self.darts[d].next;
            }
            v += 1;
        }
        self.vertices = v.max(1);
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.darts[d].twin
    }

    pub fn next(&self, d: Dart) -> Dart {
        self.darts[d].next
    }

    pub fn origin(&self, d: Dart) -> usize {
        self.darts[d].origin
    }

    pub fn head(&self, d: Dart) -> usize {
        self.darts[self.darts[d].twin].origin
    }

    /// The letter read along `d`, or `None` on a 1-edge.
    pub fn reading(&self, d: Dart) -> Option<Letter> {
        let r = &self.darts[d];
        r.label.map(|s| letter(s, r.dir))
    }

    pub fn is_essential_edge(&self, d: Dart) -> bool {
        self.darts[d].label.is_some()
    }

    pub fn prev_table(&self) -> Vec<Dart> {
        let mut prev = vec![0; self.darts.len()];
        for (d, r) in self.darts.iter().enumerate() {
            prev[r.next] = d;
        }
        prev
    }

    /// Darts leaving `v`, counterclockwise from the smallest.
    pub fn rotation(&self, v: usize) -> Vec<Dart> {
        let Some(s) = self.darts.iter().position(|r| r.origin == v) else {
            return Vec::new();
        };
        let mut out = vec![s];
        let mut d = self.darts[s].next;
        while d != s {
            out.push(d);
            d = self.darts[d].next;
        }
        out
    }

    /// Face cycles. Assumes [`Diagram::structure_errors`] is empty.
    pub fn faces(&self) -> Faces {
        let prev = self.prev_table();
        let n = self.darts.len();
        let mut face_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if face_of[s] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut c = Vec::new();
            let mut d = s;
            while face_of[d] == usize::MAX {
                face_of[d] = id;
                c.push(d);
                d = prev[self.darts[d].twin];
            }
            cycles.push(c);
        }
        let outer = match self.base {
            Some(b) => face_of[self.darts[b].twin],
            None => {
                cycles.push(Vec::new());
                cycles.len() - 1
            }
        };
        Faces { face_of, cycles, outer }
    }

    pub fn boundary_path(&self) -> Vec<Dart> {
        let Some(b) = self.base else {
            return Vec::new();
        };
        let mut out = vec![b];
        let mut d = self.darts[self.darts[b].twin].next;
        while d != b {
            out.push(d);
            d = self.darts[self.darts[d].twin].next;
            if out.len() > self.darts.len() {
                break;
            }
        }
        out
    }

    /// The same diagram with the boundary path starting at position `pos`.
    pub fn rebased(&self, pos: usize) -> Diagram {
        let path = self.boundary_path();
        let mut d = self.clone();
        if !path.is_empty() {
            d.base = Some(path[pos % path.len()]);
        }
        d
    }

    /// Letters along a dart path, skipping 1-edges.
    pub fn path_word(&self, path: &[Dart]) -> Vec<Letter> {
        path.iter().filter_map(|&d| self.reading(d)).collect()
    }

    pub fn boundary_word(&self) -> Vec<Letter> {
        self.path_word(&self.boundary_path())
    }

    pub fn face_word(&self, faces: &Faces, f: usize) -> Vec<Letter> {
        self.path_word(&faces.cycles[f])
    }

    /// `V − E + F`.
    pub fn euler(&self, faces: &Faces) -> i64 {
        self.vertices as i64 - self.edge_count() as i64 + faces.count() as i64
    }

    /// Vertices visited more than once by a face cycle.
    pub fn repeated_vertices(&self, cycle: &[Dart]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut rep = BTreeSet::new();
        for &d in cycle {
            if !seen.insert(self.origin(d)) {
                rep.insert(self.origin(d));
            }
        }
        rep.into_iter().collect()
    }

    pub fn is_simple_cycle(&self, cycle: &[Dart]) -> bool {
        self.repeated_vertices(cycle).is_empty()
    }

    /// The reflected diagram: rotations reversed, so every face and the
    /// boundary read inverted.
    pub fn mirror(&self) -> Diagram {
        let prev = self.prev_table();
        let path = self.boundary_path();
        let mut m = self.clone();
        for (d, r) in m.darts.iter_mut().enumerate() {
            r.next = prev[d];
        }
        m.base = path.last().map(|&d| self.darts[d].twin);
        m.assign_origins();
        m
    }

    /// Located violations of the rotation-system invariants, planarity and
    /// connectivity. Empty for a well-formed diagram.
    pub fn structure_errors(&self) -> Vec<String> {
        let n = self.darts.len();
        let mut errs = Vec::new();
        if n % 2 == 1 {
            errs.push(format!("odd dart count {n}"));
        }
        for (d, r) in self.darts.iter().enumerate() {
            if r.twin >= n || r.next >= n {
                errs.push(format!("dart {d}: twin or next out of range"));
                continue;
            }
            if r.twin == d {
                errs.push(format!("dart {d}: twin is itself"));
            } else if self.darts[r.twin].twin != d {
                errs.push(format!("dart {d}: twin {} has twin {}", r.twin, self.darts[r.twin].twin));
            } else {
                let t = &self.darts[r.twin];
                if t.label != r.label || (r.label.is_some() && t.dir == r.dir) {
                    errs.push(format!("dart {d}: label disagrees with twin {}", r.twin));
                }
            }
            if r.origin >= self.vertices {
                errs.push(format!("dart {d}: origin {} out of range", r.origin));
            }
        }
        if !errs.is_empty() {
            return errs;
        }
        let mut indeg = vec![0; n];
        for r in &self.darts {
            indeg[r.next] += 1;
        }
        if let Some(d) = indeg.iter().position(|&c| c != 1) {
            errs.push(format!("next is not a permutation at dart {d}"));
            return errs;
        }
        // Each vertex must be exactly one orbit of `next`.
        let mut orbit_of_vertex = vec![usize::MAX; self.vertices];
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let v = self.darts[s].origin;
            if orbit_of_vertex[v] != usize::MAX {
                errs.push(format!("vertex {v} carries two rotation cycles (darts {} and {s})", orbit_of_vertex[v]));
            }
            orbit_of_vertex[v] = s;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                if self.darts[d].origin != v {
                    errs.push(format!(
                        "dart {d}: origin {} differs from its rotation cycle's vertex {v}",
                        self.darts[d].origin
                    ));
                }
                d = self.darts[d].next;
            }
        }
        if n == 0 {
            if self.vertices != 1 {
                errs.push(format!("{} vertices without edges", self.vertices));
            }
            if self.base.is_some() {
                errs.push("base dart set on an empty diagram".into());
            }
            return errs;
        }
        if let Some(v) = orbit_of_vertex.iter().position(|&o| o == usize::MAX) {
            errs.push(format!("vertex {v} has no darts"));
        }
        if !errs.is_empty() {
            return errs;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for r in &self.darts {
            adj[r.origin].push(self.darts[r.twin].origin);
        }
        let mut reach = vec![false; self.vertices];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !reach[w] {
                    reach[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = reach.iter().position(|&r| !r) {
            errs.push(format!("vertex {v} is not connected to vertex 0"));
        }
        match self.base {
            None => errs.push("no base dart on a nonempty diagram".into()),
            Some(b) if b >= n => errs.push(format!("base dart {b} out of range")),
            Some(_) => {
                let faces = self.faces();
                let chi = self.euler(&faces);
                if chi != 2 {
                    errs.push(format!("V - E + F = {chi}, expected 2"));
                }
            }
        }
        errs
    }
}
