//! Normalization pipeline. Each pass is a loop over surgery operations with
//! an explicit decreasing measure, checked at every round.

use super::checks::{cancel_pairs, is_bare};
use super::diagram::{Dart, Diagram};
use super::ops::{is_thin, op_fold_face, op_remove_inessential_edge, op_remove_trivial_subdiagram, pad_tracked};
use super::{classify_faces, ensure_valid, face_counts, FaceKind, RelatorTable};
use crate::error::{Error, Result};
use crate::words::reduce_letters;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Wlog1,
    Wlog2,
    Wlog3,
    Wlog4,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        match s {
            "wlog1" => Ok(Level::Wlog1),
            "wlog2" => Ok(Level::Wlog2),
            "wlog3" => Ok(Level::Wlog3),
            "wlog4" => Ok(Level::Wlog4),
            _ => Err(Error::Parse(format!("unknown level `{s}`"))),
        }
    }
}

/// Group-level hypotheses that cannot be checked from the presentation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Hypotheses {
    /// No generator is trivial in the group.
    pub generators_nontrivial: bool,
    pub aspherical: bool,
}

const ROUND_LIMIT: usize = 100_000;

fn inessential_faces(d: &Diagram, table: &RelatorTable) -> Vec<usize> {
    let faces = d.faces();
    let kinds = classify_faces(d, &faces, table);
    faces.bounded().filter(|&f| kinds[f] == FaceKind::Inessential).collect()
}

pub fn normalize(d: &Diagram, table: &RelatorTable, level: Level, hyp: Hypotheses) -> Result<Diagram> {
    if !table.presentation.structure_report()?.all_pass() {
        return Err(Error::Precondition("relators must be cyclically reduced and cyclically minimal".into()));
    }
    ensure_valid(d, table)?;
    let w = d.boundary_word();
    if reduce_letters(&w).len() != w.len() || (w.len() > 1 && w[0] == -w[w.len() - 1]) {
        return Err(Error::Precondition("boundary label is not cyclically reduced".into()));
    }
    let wlog4 = level == Level::Wlog4;
    if wlog4 {
        if !table.cprime(&BigRational::new(BigInt::one(), BigInt::from(6)))? {
            return Err(Error::Refused("wlog4 needs a C'(1/6) presentation".into()));
        }
        if table.min_len() < 2 {
            return Err(Error::Refused("wlog4 needs every relator of length at least 2".into()));
        }
    }
    // C'(1/6) with |r| >= 2 gives both hypotheses
    let hyp = if wlog4 { Hypotheses { generators_nontrivial: true, aspherical: true } } else { hyp };
    if level >= Level::Wlog2 && !hyp.generators_nontrivial {
        return Err(Error::Refused("wlog2 needs the generators-nontrivial hypothesis".into()));
    }
    if level >= Level::Wlog3 && !hyp.aspherical {
        return Err(Error::Refused("wlog3 needs the asphericity hypothesis".into()));
    }
    let before = face_counts(d, table)?;
    let mut cur = wlog1(d, table)?;
    if level >= Level::Wlog2 {
        check_conclusion_c(&cur, table)?;
    }
    if level >= Level::Wlog3 {
        cur = make_bare(&cur, table)?;
    }
    if wlog4 {
        cur = remove_cancel_pairs(&cur, table)?;
    }
    if face_counts(&cur, table)?.sigma != before.sigma {
        return Err(Error::Refused("normalization changed a signed count".into()));
    }
    if cur.boundary_word() != w {
        return Err(Error::Refused("normalization changed the boundary label".into()));
    }
    Ok(cur)
}

fn first_1_dart(d: &Diagram, cycle: &[Dart]) -> Option<Dart> {
    cycle.iter().copied().find(|&x| !d.is_essential_edge(x))
}

/// Afterwards every inessential face reads `s s⁻¹` or `1 s s⁻¹` and every
/// 1-edge is a loop.
fn wlog1(d: &Diagram, table: &RelatorTable) -> Result<Diagram> {
    let mut cur = d.clone();
    let measure = |d: &Diagram| {
        let faces = d.faces();
        let kinds = classify_faces(d, &faces, table);
        let wide =
            faces.bounded().filter(|&f| kinds[f] == FaceKind::Inessential && !is_thin(d, &faces.cycles[f])).count();
        (wide, d.edge_count())
    };
    let mut last = measure(&cur);
    for _ in 0..ROUND_LIMIT {
        let faces = cur.faces();
        let kinds = classify_faces(&cur, &faces, table);
        let Some(f) = faces.bounded().find(|&f| kinds[f] == FaceKind::Inessential && !is_thin(&cur, &faces.cycles[f]))
        else {
            break;
        };
        // one round removes face f
        let anchor = faces.cycles[f][0];
        cur = remove_wide_face(&cur, table, anchor)?;
        let m = measure(&cur);
        if m.0 >= last.0 {
            return Err(Error::Refused("wlog1 measure did not decrease".into()));
        }
        last = m;
    }
    // contract the remaining non-loop 1-edges
    for _ in 0..ROUND_LIMIT {
        let Some(x) = (0..cur.darts.len()).find(|&x| !cur.is_essential_edge(x) && cur.origin(x) != cur.head(x)) else {
            break;
        };
        cur = op_remove_inessential_edge(&cur, table, x)?;
    }
    Ok(cur)
}

/// Pads the face of `anchor` until simple, contracts its 1-edges, then
/// removes it with Operation 2 and the fold.
fn remove_wide_face(d: &Diagram, table: &RelatorTable, anchor: Dart) -> Result<Diagram> {
    let mut cur = d.clone();
    // keep a dart of the face that survives each step; contraction only
    // drops the contracted edge
    let mut track = anchor;
    for _ in 0..ROUND_LIMIT {
        let faces = cur.faces();
        let f = faces.face_of[track];
        let cyc = faces.cycles[f].clone();
        if cyc.len() == 1 && !cur.is_essential_edge(cyc[0]) {
            return op_remove_inessential_edge(&cur, table, cyc[0]);
        }
        if let Some(&v) = cur.repeated_vertices(&cyc).first() {
            (cur, track) = pad_tracked(&cur, table, v, f, track)?;
            continue;
        }
        if let Some(x) = first_1_dart(&cur, &cyc) {
            let keep = cyc.iter().copied().find(|&y| y != x).expect("face has two darts");
            let next = op_remove_inessential_edge(&cur, table, x)?;
            // ids above the removed pair shift down by two
            let gone = [x, cur.twin(x)];
            track = keep - gone.iter().filter(|&&g| g < keep).count();
            cur = next;
            continue;
        }
        let (next, dart) = op_remove_trivial_subdiagram(&cur, table, &[f])?;
        return op_fold_face(&next, table, dart);
    }
    Err(Error::Refused("face removal did not terminate".into()))
}

/// Every inessential face lies in a simple subdiagram with boundary label
/// `s s⁻¹`: the face itself, or the face together with the one across its
/// 1-edge.
fn check_conclusion_c(d: &Diagram, table: &RelatorTable) -> Result<()> {
    for f in inessential_faces(d, table) {
        let set = subdiagram_for(d, f)?;
        let (merged, dart) = op_remove_trivial_subdiagram(d, table, &set)?;
        let faces = merged.faces();
        if faces.cycles[faces.face_of[dart]].len() != 2 {
            return Err(Error::Refused(format!("inessential face {f} is not in a simple ss^-1 subdiagram")));
        }
    }
    Ok(())
}

fn subdiagram_for(d: &Diagram, f: usize) -> Result<Vec<usize>> {
    let faces = d.faces();
    let cyc = &faces.cycles[f];
    if cyc.len() == 2 && d.is_simple_cycle(cyc) && first_1_dart(d, cyc).is_none() {
        return Ok(vec![f]);
    }
    if let Some(x) = first_1_dart(d, cyc) {
        let g = faces.face_of[d.twin(x)];
        if g != faces.outer && g != f {
            return Ok(vec![f, g]);
        }
    }
    Err(Error::Refused(format!("inessential face at dart {} has no simple ss^-1 neighbourhood", cyc[0])))
}

fn make_bare(d: &Diagram, table: &RelatorTable) -> Result<Diagram> {
    let mut cur = d.clone();
    let mut last = (usize::MAX, usize::MAX);
    for _ in 0..ROUND_LIMIT {
        let ines = inessential_faces(&cur, table);
        let Some(&f) = ines.first() else {
            break;
        };
        let m = (ines.len(), cur.edge_count());
        if m >= last {
            return Err(Error::Refused("wlog3 measure did not decrease".into()));
        }
        last = m;
        let set = subdiagram_for(&cur, f)?;
        let (next, dart) = op_remove_trivial_subdiagram(&cur, table, &set)?;
        cur = op_fold_face(&next, table, dart)?;
    }
    if !is_bare(&cur, table) {
        return Err(Error::Refused("wlog3 did not reach a bare diagram".into()));
    }
    Ok(cur)
}

fn remove_cancel_pairs(d: &Diagram, table: &RelatorTable) -> Result<Diagram> {
    let mut cur = d.clone();
    for _ in 0..ROUND_LIMIT {
        let pairs = cancel_pairs(&cur, table);
        if pairs.is_empty() {
            return Ok(cur);
        }
        let mut done = None;
        let mut why = String::new();
        for &(f, g, _) in &pairs {
            match op_remove_trivial_subdiagram(&cur, table, &[f, g]) {
                Ok((next, dart)) => {
                    done = Some(op_fold_face(&next, table, dart)?);
                    break;
                }
                Err(e) => why = e.to_string(),
            }
        }
        match done {
            Some(next) => {
                if next.edge_count() >= cur.edge_count() {
                    return Err(Error::Refused("wlog4 measure did not decrease".into()));
                }
                cur = next;
            }
            None => return Err(Error::Refused(format!("no canceling pair is removable: {why}"))),
        }
    }
    Err(Error::Refused("wlog4 did not terminate".into()))
}
