//! The five surgery operations, the trivial-face fold that finishes
//! Operation 2, and the attach primitives used to grow diagrams.

use super::diagram::{Dart, DartRec, Diagram};
use super::{ensure_valid, RelatorTable};
use crate::error::{Error, Result};
use crate::words::{invert_letters, letter_sign, letter_sym, reduce_letters, Letter, Sign};
use std::collections::{BTreeSet, HashMap};

/// Scratch copy of a diagram that allows removing and adding darts. `finish`
/// compacts dart ids in order and recomputes vertices from the rotations.
struct Edit {
    name: String,
    recs: Vec<Option<DartRec>>,
    base: Option<Dart>,
}

impl Edit {
    fn new(d: &Diagram) -> Edit {
        Edit { name: d.presentation.clone(), recs: d.darts.iter().cloned().map(Some).collect(), base: d.base }
    }

    fn rec(&mut self, d: Dart) -> &mut DartRec {
        self.recs[d].as_mut().expect("live dart")
    }

    fn next(&self, d: Dart) -> Dart {
        self.recs[d].as_ref().expect("live dart").next
    }

    fn twin(&self, d: Dart) -> Dart {
        self.recs[d].as_ref().expect("live dart").twin
    }

    fn set_next(&mut self, a: Dart, b: Dart) {
        self.rec(a).next = b;
    }

    fn add_edge(&mut self, label: Option<usize>, dir: Sign) -> (Dart, Dart) {
        let a = self.recs.len();
        let b = a + 1;
        self.recs.push(Some(DartRec { twin: b, next: a, origin: 0, label, dir }));
        // 1-edges carry no orientation; both darts say `+`
        let back = if label.is_some() { dir.flip() } else { Sign::Pos };
        self.recs.push(Some(DartRec { twin: a, next: b, origin: 0, label, dir: back }));
        (a, b)
    }

    /// A new edge whose first dart reads `l` (or 1).
    fn add_reading(&mut self, l: Option<Letter>) -> (Dart, Dart) {
        match l {
            None => self.add_edge(None, Sign::Pos),
            Some(l) => self.add_edge(Some(letter_sym(l)), letter_sign(l)),
        }
    }

    fn copy_edge(&mut self, like: &DartRec) -> (Dart, Dart) {
        self.add_edge(like.label, like.dir)
    }

    fn prev(&self, d: Dart) -> Dart {
        let mut p = d;
        loop {
            let n = self.next(p);
            if n == d {
                return p;
            }
            p = n;
        }
    }

    fn insert_after(&mut self, at: Dart, new: Dart) {
        let n = self.next(at);
        self.set_next(at, new);
        self.set_next(new, n);
    }

    fn insert_before(&mut self, at: Dart, new: Dart) {
        let p = self.prev(at);
        self.insert_after(p, new);
    }

    /// Takes `d` out of its rotation.
    fn unlink(&mut self, d: Dart) {
        let p = self.prev(d);
        if p != d {
            let n = self.next(d);
            self.set_next(p, n);
        }
        self.set_next(d, d);
    }

    /// Removes a set of darts, splicing every rotation around them.
    fn drop_darts(&mut self, gone: &BTreeSet<Dart>) {
        for d in 0..self.recs.len() {
            if self.recs[d].is_none() || gone.contains(&d) {
                continue;
            }
            let mut n = self.next(d);
            while gone.contains(&n) {
                n = self.next(n);
            }
            self.set_next(d, n);
        }
        for &d in gone {
            self.recs[d] = None;
        }
    }

    fn link_cycle(&mut self, cycle: &[Dart]) {
        for i in 0..cycle.len() {
            self.set_next(cycle[i], cycle[(i + 1) % cycle.len()]);
        }
    }

    /// Compacts and returns the diagram with the old-to-new dart map.
    fn finish(self) -> (Diagram, Vec<Option<Dart>>) {
        let mut map = vec![None; self.recs.len()];
        let mut k = 0;
        for (d, r) in self.recs.iter().enumerate() {
            if r.is_some() {
                map[d] = Some(k);
                k += 1;
            }
        }
        let darts = self
            .recs
            .iter()
            .flatten()
            .map(|r| DartRec {
                twin: map[r.twin].expect("twin kept"),
                next: map[r.next].expect("next kept"),
                origin: 0,
                label: r.label,
                dir: r.dir,
            })
            .collect();
        let base = self.base.and_then(|b| map[b]);
        let mut d = Diagram { presentation: self.name, vertices: 1, darts, base };
        d.assign_origins();
        (d, map)
    }
}

/// Checks a surgery result: well-formed, every face valid, and the boundary
/// word as promised.
fn audit(out: &Diagram, table: &RelatorTable, boundary: &[Letter], what: &str) -> Result<()> {
    ensure_valid(out, table).map_err(|e| Error::Refused(format!("{what} gave an invalid diagram: {e}")))?;
    if out.boundary_word() != boundary {
        return Err(Error::Refused(format!("{what} changed the boundary label")));
    }
    Ok(())
}

/// Moves the base along the boundary past darts that are about to disappear.
fn rebase(d: &Diagram, gone: &dyn Fn(Dart) -> bool) -> Option<Dart> {
    let path = d.boundary_path();
    path.into_iter().find(|&p| !gone(p))
}

/// Operation 1 on the edge of `dart`: contraction when its endpoints differ,
/// deletion when it is a loop.
pub fn op_remove_inessential_edge(d: &Diagram, table: &RelatorTable, dart: Dart) -> Result<Diagram> {
    if dart >= d.darts.len() {
        return Err(Error::Refused(format!("no dart {dart}")));
    }
    if d.is_essential_edge(dart) {
        return Err(Error::Refused(format!("dart {dart} lies on an essential edge")));
    }
    let t = d.twin(dart);
    let faces = d.faces();
    let (fl, fr) = (faces.face_of[dart], faces.face_of[t]);
    let boundary = d.boundary_word();
    let mut e = Edit::new(d);
    if d.origin(dart) != d.origin(t) {
        let u: Vec<Dart> = rotation_from(d, d.next(dart), dart);
        let v: Vec<Dart> = rotation_from(d, d.next(t), t);
        let merged: Vec<Dart> = v.into_iter().chain(u).collect();
        e.recs[dart] = None;
        e.recs[t] = None;
        if !merged.is_empty() {
            e.link_cycle(&merged);
        }
    } else {
        if fl == fr {
            return Err(Error::Refused(format!("loop at dart {dart} has the same face on both sides")));
        }
        let other = if fl == faces.outer {
            Some(fr)
        } else if fr == faces.outer {
            Some(fl)
        } else {
            None
        };
        if let Some(f) = other {
            if !d.face_word(&faces, f).is_empty() {
                return Err(Error::Refused(format!(
                    "loop at dart {dart} separates the outer face from a face with nonempty label"
                )));
            }
        }
        e.unlink(dart);
        e.unlink(t);
        e.recs[dart] = None;
        e.recs[t] = None;
    }
    e.base = rebase(d, &|p| p == dart || p == t);
    let (out, _) = e.finish();
    audit(&out, table, &boundary, "operation 1")?;
    Ok(out)
}

/// Rotation at `origin(start)` from `start`, stopping before `stop`.
fn rotation_from(d: &Diagram, start: Dart, stop: Dart) -> Vec<Dart> {
    let mut out = Vec::new();
    let mut x = start;
    while x != stop {
        out.push(x);
        x = d.next(x);
    }
    out
}

/// Darts of `set`'s faces whose twin lies outside `set`, as one cycle with
/// the subdiagram on the left.
fn region_boundary(d: &Diagram, face_of: &[usize], set: &BTreeSet<usize>) -> Result<Vec<Dart>> {
    let inside = |x: Dart| set.contains(&face_of[x]);
    let rim: Vec<Dart> = (0..d.darts.len()).filter(|&x| inside(x) && !inside(d.twin(x))).collect();
    let Some(&first) = rim.first() else {
        return Err(Error::Refused("subdiagram has no boundary".into()));
    };
    let prev = d.prev_table();
    let mut cycle = vec![first];
    let mut b = first;
    loop {
        let mut c = prev[d.twin(b)];
        while inside(d.twin(c)) {
            c = prev[c];
            if c == d.twin(b) {
                return Err(Error::Refused("subdiagram boundary is not a single closed curve".into()));
            }
        }
        if c == first {
            break;
        }
        if cycle.len() > rim.len() || !rim.contains(&c) {
            return Err(Error::Refused("subdiagram boundary is not a single closed curve".into()));
        }
        cycle.push(c);
        b = c;
    }
    if cycle.len() != rim.len() {
        return Err(Error::Refused("subdiagram boundary has more than one component".into()));
    }
    if !d.is_simple_cycle(&cycle) {
        return Err(Error::Refused("subdiagram boundary is not simple".into()));
    }
    Ok(cycle)
}

/// First step of Operation 2: the faces in `set` and everything between
/// them become one inessential face. Returns the new diagram and a dart of
/// that face.
pub fn op_remove_trivial_subdiagram(d: &Diagram, table: &RelatorTable, set: &[usize]) -> Result<(Diagram, Dart)> {
    let faces = d.faces();
    let set: BTreeSet<usize> = set.iter().copied().collect();
    if set.is_empty() {
        return Err(Error::Refused("empty subdiagram".into()));
    }
    if let Some(&f) = set.iter().find(|&&f| f >= faces.count() || f == faces.outer) {
        return Err(Error::Refused(format!("face {f} is not a bounded face")));
    }
    let rim = region_boundary(d, &faces.face_of, &set)?;
    if let Some(&x) = rim.iter().find(|&&x| !d.is_essential_edge(x)) {
        return Err(Error::Refused(format!("inessential edge at dart {x} on the subdiagram boundary")));
    }
    let word = d.path_word(&rim);
    if !reduce_letters(&word).is_empty() {
        return Err(Error::Refused("subdiagram boundary label is not freely trivial".into()));
    }
    // The region must be a disk: V - E + F = 1 over its closure.
    let inside = |x: Dart| set.contains(&faces.face_of[x]);
    let touched: BTreeSet<Dart> = (0..d.darts.len()).filter(|&x| inside(x) || inside(d.twin(x))).collect();
    let verts: BTreeSet<usize> = touched.iter().map(|&x| d.origin(x)).collect();
    let chi = verts.len() as i64 - (touched.len() / 2) as i64 + set.len() as i64;
    if chi != 1 {
        return Err(Error::Refused(format!("subdiagram is not a disk (V-E+F = {chi})")));
    }
    let boundary = d.boundary_word();
    let gone: BTreeSet<Dart> = (0..d.darts.len()).filter(|&x| inside(x) && inside(d.twin(x))).collect();
    let mut e = Edit::new(d);
    e.drop_darts(&gone);
    let (out, map) = e.finish();
    audit(&out, table, &boundary, "operation 2")?;
    Ok((out, map[rim[0]].expect("rim kept")))
}

/// Zips a simple face with freely trivial label and no 1-edges shut by
/// folding adjacent `s s⁻¹` pairs together until it disappears.
pub fn op_fold_face(d: &Diagram, table: &RelatorTable, dart: Dart) -> Result<Diagram> {
    let boundary = d.boundary_word();
    let mut cur = d.clone();
    let mut track = dart;
    loop {
        let faces = cur.faces();
        let f = faces.face_of[track];
        if f == faces.outer {
            return Err(Error::Refused("cannot fold the outer face".into()));
        }
        let cyc = faces.cycles[f].clone();
        if cyc.iter().any(|&x| !cur.is_essential_edge(x)) {
            return Err(Error::Refused("face has an inessential edge".into()));
        }
        if !cur.is_simple_cycle(&cyc) {
            return Err(Error::Refused("face is not simple".into()));
        }
        if !reduce_letters(&cur.path_word(&cyc)).is_empty() {
            return Err(Error::Refused("face label is not freely trivial".into()));
        }
        let n = cyc.len();
        let j = (0..n)
            .find(|&j| cur.reading(cyc[(j + 1) % n]) == cur.reading(cyc[j]).map(|l| -l))
            .ok_or_else(|| Error::Refused("no cancelling pair on face".into()))?;
        let (g, h) = (cyc[j], cyc[(j + 1) % n]);
        let (tg, th) = (cur.twin(g), cur.twin(h));
        let mut e = Edit::new(&cur);
        if n == 2 {
            e.unlink(g);
            e.unlink(h);
        } else {
            // merge origin(g) with head(h): g's slot takes head(h)'s rotation
            // starting at twin(h)
            let wrot = rotation_from(&cur, cur.next(th), th);
            let urot = rotation_from(&cur, cur.next(g), g);
            let mut merged = vec![th];
            merged.extend(wrot);
            merged.extend(urot);
            e.unlink(h);
            e.link_cycle(&merged);
        }
        e.rec(tg).twin = th;
        e.rec(th).twin = tg;
        if e.base == Some(g) {
            e.base = Some(th);
        } else if e.base == Some(h) {
            e.base = Some(tg);
        }
        e.recs[g] = None;
        e.recs[h] = None;
        let survivor = if n > 2 { Some(cyc[(j + 2) % n]) } else { None };
        let (out, map) = e.finish();
        cur = out;
        match survivor {
            Some(s) => track = map[s].expect("kept"),
            None => break,
        }
    }
    audit(&cur, table, &boundary, "face fold")?;
    Ok(cur)
}

/// Operation 3: pads `vertex`, which must repeat on the boundary of face
/// `face`.
pub fn op_pad_vertex(d: &Diagram, table: &RelatorTable, vertex: usize, face: usize) -> Result<Diagram> {
    let track = d.faces().cycles.get(face).map_or(0, |c| c[0]);
    pad_tracked(d, table, vertex, face, track).map(|(out, _)| out)
}

/// Operation 3, also returning where dart `track` of the face went: darts
/// touching `vertex` are replaced by their copies on the face's side.
pub(crate) fn pad_tracked(
    d: &Diagram,
    table: &RelatorTable,
    vertex: usize,
    face: usize,
    track: Dart,
) -> Result<(Diagram, Dart)> {
    let faces = d.faces();
    if face >= faces.count() {
        return Err(Error::Refused(format!("no face {face}")));
    }
    let hits = faces.cycles[face].iter().filter(|&&x| d.origin(x) == vertex).count();
    if hits < 2 {
        return Err(Error::Refused(format!("vertex {vertex} is not repeated on face {face}")));
    }
    let rot = d.rotation(vertex);
    if rot.iter().any(|&x| d.head(x) == vertex) {
        return Err(Error::Unsupported(format!("padding vertex {vertex} with a loop")));
    }
    let boundary = d.boundary_word();
    let k = rot.len();
    let mut e = Edit::new(d);
    let mut cs = Vec::new();
    let mut abs = Vec::new();
    for i in 0..k {
        let (c, ct) = e.add_edge(None, Sign::Pos);
        let (a, at) = e.copy_edge(&d.darts[rot[i]]);
        let (b, bt) = e.copy_edge(&d.darts[rot[(i + 1) % k]]);
        e.link_cycle(&[a, b, ct]);
        cs.push(c);
        abs.push((a, at, b, bt));
    }
    let mut xrot = Vec::new();
    for i in 0..k {
        xrot.push(rot[i]);
        xrot.push(cs[i]);
    }
    e.link_cycle(&xrot);
    for i in 0..k {
        let t = d.twin(rot[i]);
        let at = abs[i].1;
        let bt_prev = abs[(i + k - 1) % k].3;
        e.insert_before(t, at);
        e.insert_after(t, bt_prev);
    }
    if let Some(b) = d.base {
        if let Some(i) = rot.iter().position(|&x| x == b) {
            e.base = Some(abs[(i + k - 1) % k].2);
        } else if let Some(i) = rot.iter().position(|&x| d.twin(x) == b) {
            e.base = Some(abs[i].1);
        }
    }
    // the face leaves corner i along a_i and arrives along twin(b_i)
    let moved = if let Some(i) = rot.iter().position(|&x| x == track) {
        abs[i].0
    } else if let Some(j) = rot.iter().position(|&x| d.twin(x) == track) {
        abs[(j + k - 1) % k].3
    } else {
        track
    };
    let (out, map) = e.finish();
    audit(&out, table, &boundary, "operation 3")?;
    Ok((out, map[moved].expect("kept")))
}

/// Operation 4: replaces simple face `face` by a copy of `replacement`,
/// whose boundary must read the face's darts in some cyclic order.
pub fn op_quotient_face(d: &Diagram, table: &RelatorTable, face: usize, replacement: &Diagram) -> Result<Diagram> {
    let faces = d.faces();
    if face >= faces.count() || face == faces.outer {
        return Err(Error::Refused(format!("face {face} is not a bounded face")));
    }
    let f = faces.cycles[face].clone();
    if !d.is_simple_cycle(&f) {
        return Err(Error::Refused(format!("face {face} is not simple")));
    }
    let p = replacement.boundary_path();
    let l = f.len();
    let freading: Vec<Option<Letter>> = f.iter().map(|&x| d.reading(x)).collect();
    let offset = (0..p.len().max(1))
        .find(|&k| p.len() == l && (0..l).all(|j| replacement.reading(p[(j + k) % l]) == freading[j]))
        .ok_or_else(|| Error::Refused("replacement boundary does not match the face label".into()))?;
    let pj: Vec<Dart> = (0..l).map(|j| p[(j + offset) % l]).collect();
    let boundary = d.boundary_word();

    let off = d.darts.len();
    let q: Vec<Dart> = f.iter().map(|&x| d.twin(x)).collect();
    // outer-side replacement dart twin(P_j) stands for q_j
    let mut outer_slot: HashMap<Dart, usize> = HashMap::new();
    for (j, &x) in pj.iter().enumerate() {
        outer_slot.insert(replacement.twin(x), j);
    }
    let kept_rep = |x: Dart| !outer_slot.contains_key(&x);
    let mut e = Edit::new(d);
    for r in &replacement.darts {
        e.recs.push(Some(DartRec { twin: r.twin + off, next: r.next + off, origin: 0, label: r.label, dir: r.dir }));
    }
    for j in 0..l {
        let partner = if kept_rep(pj[j]) { pj[j] + off } else { q[*outer_slot.get(&pj[j]).expect("outer dart")] };
        e.rec(q[j]).twin = partner;
        e.rec(partner).twin = q[j];
    }
    // rotations at replacement vertices on its boundary
    for v in 0..replacement.vertices {
        let rot = replacement.rotation(v);
        if rot.iter().all(|&x| kept_rep(x)) {
            continue;
        }
        let mut cyc = Vec::new();
        for &x in &rot {
            match outer_slot.get(&x) {
                None => cyc.push(x + off),
                Some(&i) => {
                    let stop = f[(i + 1) % l];
                    cyc.extend(rotation_from(d, q[i], stop));
                }
            }
        }
        e.link_cycle(&cyc);
    }
    for &x in &f {
        e.recs[x] = None;
    }
    for &x in outer_slot.keys() {
        e.recs[x + off] = None;
    }
    if let Some(b) = d.base {
        if let Some(j) = f.iter().position(|&x| x == b) {
            e.base = Some(e.twin(q[j]));
        }
    }
    let (out, _) = e.finish();
    audit(&out, table, &boundary, "operation 4")?;
    Ok(out)
}

/// Operation 5: excises boundary subpath `start..start+len` (positions on
/// the boundary path from the base), which must read a cyclic shift of a
/// relator or its inverse, identifying its endpoints through the outer face.
/// Returns the diagram and the `(relator, sign)` of the new face.
pub fn op_excise(d: &Diagram, table: &RelatorTable, start: usize, len: usize) -> Result<(Diagram, usize, i64)> {
    let path = d.boundary_path();
    let n = path.len();
    if len == 0 || start + len >= n {
        return Err(Error::Refused("subpath must be nonempty and leave a nonempty remainder".into()));
    }
    let rho = &path[start..start + len];
    let word = d.path_word(rho);
    if word.len() != len {
        return Err(Error::Refused("subpath crosses an inessential edge".into()));
    }
    let (r, sign) = table
        .lookup(&word)
        .ok_or_else(|| Error::Refused("subpath label is not a shift of a relator or its inverse".into()))?;
    let (b1, bk) = (rho[0], rho[len - 1]);
    let after = path[start + len];
    if d.origin(b1) == d.origin(after) {
        return Err(Error::Refused("subpath endpoints coincide".into()));
    }
    let before = path[(start + n - 1) % n];
    let mut e = Edit::new(d);
    e.set_next(d.twin(before), after);
    e.set_next(d.twin(bk), b1);
    if start == 0 {
        e.base = Some(after);
    }
    let (out, _) = e.finish();
    let expect: Vec<Letter> =
        d.path_word(&path[..start]).into_iter().chain(d.path_word(&path[start + len..])).collect();
    audit(&out, table, &expect, "operation 5")?;
    Ok((out, r, -sign))
}

/// Attaches a new face along boundary positions `start..start+len`. The
/// face reads `word` counterclockwise, starting with the inverse of that
/// subpath; the rest of `word` becomes new boundary. With `len = 0` the face
/// is a petal in the corner before position `start`.
pub fn attach_face(d: &Diagram, start: usize, len: usize, word: &[Letter]) -> Result<Diagram> {
    let path = d.boundary_path();
    let n = path.len();
    if word.len() <= len {
        return Err(Error::Refused("attached face needs at least one new edge".into()));
    }
    if n > 0 && (start >= n || (len > 0 && len >= n)) {
        return Err(Error::Refused("attach position out of range".into()));
    }
    if n == 0 && (start != 0 || len != 0) {
        return Err(Error::Refused("the empty diagram only takes petals".into()));
    }
    let sigma: Vec<Dart> = (0..len).map(|i| path[(start + i) % n]).collect();
    let sw: Vec<Option<Letter>> = sigma.iter().map(|&x| d.reading(x)).collect();
    if sw.iter().any(Option::is_none) {
        return Err(Error::Refused("attach path crosses an inessential edge".into()));
    }
    let sw: Vec<Letter> = sw.into_iter().flatten().collect();
    if word[..len] != invert_letters(&sw)[..] {
        return Err(Error::Refused("face word does not start with the inverse of the attach path".into()));
    }
    let mut e = Edit::new(d);
    let tau: Vec<(Dart, Dart)> = word[len..].iter().map(|&l| e.add_reading(Some(l))).collect();
    let m = tau.len();
    for i in 1..m {
        e.link_cycle(&[tau[i - 1].1, tau[i].0]);
    }
    let (t1, tm_twin) = (tau[0].0, tau[m - 1].1);
    if n == 0 {
        e.link_cycle(&[t1, tm_twin]);
        e.base = Some(t1);
    } else {
        let before = path[(start + n - 1) % n];
        if len == 0 {
            e.insert_after(d.twin(before), t1);
            e.insert_after(t1, tm_twin);
        } else {
            let last = sigma[len - 1];
            e.insert_after(d.twin(before), t1);
            e.insert_after(d.twin(last), tm_twin);
        }
        if start == 0 || (len > 0 && start + len > n) {
            e.base = Some(t1);
        }
    }
    let (out, _) = e.finish();
    let errs = out.structure_errors();
    if !errs.is_empty() {
        return Err(Error::Refused(format!("attach gave a malformed diagram: {}", errs.join("; "))));
    }
    Ok(out)
}

/// Grows a path reading `word` out of the corner before boundary position
/// `start`; the boundary gains `word word⁻¹` there.
pub fn attach_spike(d: &Diagram, start: usize, word: &[Letter]) -> Result<Diagram> {
    let path = d.boundary_path();
    let n = path.len();
    if word.is_empty() {
        return Err(Error::Refused("empty spike".into()));
    }
    if (n == 0 && start != 0) || (n > 0 && start >= n) {
        return Err(Error::Refused("spike position out of range".into()));
    }
    let mut e = Edit::new(d);
    let t: Vec<(Dart, Dart)> = word.iter().map(|&l| e.add_reading(Some(l))).collect();
    for i in 1..t.len() {
        e.link_cycle(&[t[i - 1].1, t[i].0]);
    }
    if n == 0 {
        e.base = Some(t[0].0);
    } else {
        let before = path[(start + n - 1) % n];
        e.insert_after(d.twin(before), t[0].0);
        if start == 0 {
            e.base = Some(t[0].0);
        }
    }
    let (out, _) = e.finish();
    let errs = out.structure_errors();
    if !errs.is_empty() {
        return Err(Error::Refused(format!("spike gave a malformed diagram: {}", errs.join("; "))));
    }
    Ok(out)
}

/// Whether a face reads 1-free `s s⁻¹` or `1 s s⁻¹` up to rotation.
pub(crate) fn is_thin(d: &Diagram, cycle: &[Dart]) -> bool {
    let r: Vec<Option<Letter>> = cycle.iter().map(|&x| d.reading(x)).collect();
    match r.len() {
        2 => r[0].is_some() && r[1] == r[0].map(|l| -l),
        3 => (0..3).any(|i| r[i].is_none() && r[(i + 1) % 3].is_some() && r[(i + 2) % 3] == r[(i + 1) % 3].map(|l| -l)),
        _ => false,
    }
}
