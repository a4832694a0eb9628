//! Van Kampen diagrams as rotation systems, the five surgery operations,
//! the normalization pipeline and the Greendlinger and perimeter checks.

mod checks;
mod corpus;
mod diagram;
mod io;
mod ops;
mod templates;
mod wlog;

pub use checks::{
    cancel_pairs, faces_are_disks, greendlinger_check, is_bare, is_reduced, perimeter_check, GreendlingerOutcome,
};
pub use corpus::{
    builtin_presentation, g_template, generate_corpus, quotient_all, CorpusEntry, CorpusStats, BUILTIN_PRESENTATIONS,
    CORPUS_G_POWER, CORPUS_G_TEMPLATED,
};
pub use diagram::{Dart, DartRec, Diagram, Faces};
pub use io::{parse_diagram, write_diagram};
pub use ops::{
    attach_face, attach_spike, op_excise, op_fold_face, op_pad_vertex, op_quotient_face, op_remove_inessential_edge,
    op_remove_trivial_subdiagram,
};
pub use templates::{commutator_template, flower_template, link_template, petal_chain};
pub use wlog::{normalize, Hypotheses, Level};

use crate::error::{Error, Result};
use crate::presentation::{check_cprime, Presentation};
use crate::report::Report;
use crate::words::{reduce_letters, Letter};
use num_rational::BigRational;
use std::collections::HashMap;

/// Relators of a presentation expanded to letters, with every cyclic shift
/// of `r` and `r⁻¹` indexed.
#[derive(Clone, Debug)]
pub struct RelatorTable {
    pub presentation: Presentation,
    pub words: Vec<Vec<Letter>>,
    shifts: HashMap<Vec<Letter>, (usize, i64)>,
    /// Set when a shift belongs to two relators, or to `r` and `r⁻¹`.
    pub ambiguity: Option<String>,
}

/// Relators longer than this are not expanded for diagram work.
pub const RELATOR_EXPAND_LIMIT: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    /// Reads a shift of `relators[relator]^sign` counterclockwise.
    Essential {
        relator: usize,
        sign: i64,
    },
    Inessential,
    Invalid,
}

impl RelatorTable {
    pub fn new(p: &Presentation) -> Result<RelatorTable> {
        let mut words = Vec::new();
        for (i, w) in p.words()?.iter().enumerate() {
            if w.len() > &RELATOR_EXPAND_LIMIT.into() {
                return Err(Error::TooLarge(format!("relator {i} has length {}", w.len())));
            }
            words.push(w.letters()?);
        }
        let mut shifts: HashMap<Vec<Letter>, (usize, i64)> = HashMap::new();
        let mut ambiguity = None;
        for (i, w) in words.iter().enumerate() {
            let inv = crate::words::invert_letters(w);
            for (base, sign) in [(w, 1), (&inv, -1)] {
                for s in 0..base.len() {
                    let shifted: Vec<Letter> = base[s..].iter().chain(&base[..s]).copied().collect();
                    match shifts.get(&shifted) {
                        Some(&prev) if prev != (i, sign) => {
                            ambiguity.get_or_insert_with(|| {
                                format!(
                                    "a shift of relator {i} (sign {sign}) also reads relator {} (sign {})",
                                    prev.0, prev.1
                                )
                            });
                        }
                        Some(_) => {}
                        None => {
                            shifts.insert(shifted, (i, sign));
                        }
                    }
                }
            }
        }
        Ok(RelatorTable { presentation: p.clone(), words, shifts, ambiguity })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `(relator, sign)` if `w` is a cyclic shift of a relator or its inverse.
    pub fn lookup(&self, w: &[Letter]) -> Option<(usize, i64)> {
        self.shifts.get(w).copied()
    }

    pub fn classify(&self, w: &[Letter]) -> FaceKind {
        if let Some((relator, sign)) = self.lookup(w) {
            FaceKind::Essential { relator, sign }
        } else if reduce_letters(w).is_empty() {
            FaceKind::Inessential
        } else {
            FaceKind::Invalid
        }
    }

    /// All shifts of every `r^{±1}`, in a fixed order.
    pub fn star(&self) -> Vec<(&[Letter], usize, i64)> {
        let mut out: Vec<_> = self.shifts.iter().map(|(w, &(r, s))| (&w[..], r, s)).collect();
        out.sort();
        out
    }

    pub fn cprime(&self, lambda: &BigRational) -> Result<bool> {
        Ok(check_cprime(&self.presentation, lambda, None)?.holds)
    }

    pub fn min_len(&self) -> usize {
        self.words.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// κ and σ per relator index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCounts {
    pub kappa: Vec<u64>,
    pub sigma: Vec<i64>,
}

pub fn classify_faces(d: &Diagram, faces: &Faces, table: &RelatorTable) -> Vec<FaceKind> {
    (0..faces.count())
        .map(|f| if f == faces.outer { FaceKind::Inessential } else { table.classify(&d.face_word(faces, f)) })
        .collect()
}

pub fn validate_diagram(d: &Diagram, table: &RelatorTable) -> Report {
    let mut rep = Report::new("diagram");
    let errs = d.structure_errors();
    if !errs.is_empty() {
        for e in errs {
            rep.fail("structure", e);
        }
        return rep;
    }
    let faces = d.faces();
    rep.pass(
        "rotation system",
        format!("V={} E={} F={} V-E+F={}", d.vertices, d.edge_count(), faces.count(), d.euler(&faces)),
    );
    let kinds = classify_faces(d, &faces, table);
    for f in faces.bounded() {
        let start = faces.cycles[f][0];
        match kinds[f] {
            FaceKind::Essential { relator, sign } => {
                rep.pass(format!("face at dart {start}"), format!("essential r{relator} sign {sign:+}"))
            }
            FaceKind::Inessential => rep.pass(format!("face at dart {start}"), "inessential"),
            FaceKind::Invalid => rep.fail(
                format!("face at dart {start}"),
                format!("label {} neither in R* nor freely trivial", table.format(&d.face_word(&faces, f))),
            ),
        }
    }
    rep
}

impl RelatorTable {
    pub fn format(&self, w: &[Letter]) -> String {
        self.presentation.alphabet.format_word(&crate::words::RleWord::from_letters(w))
    }
}

pub fn face_counts(d: &Diagram, table: &RelatorTable) -> Result<FaceCounts> {
    if let Some(a) = &table.ambiguity {
        return Err(Error::Precondition(format!("presentation not cyclically minimal: {a}")));
    }
    let faces = d.faces();
    let mut c = FaceCounts { kappa: vec![0; table.len()], sigma: vec![0; table.len()] };
    for f in faces.bounded() {
        match table.classify(&d.face_word(&faces, f)) {
            FaceKind::Essential { relator, sign } => {
                c.kappa[relator] += 1;
                c.sigma[relator] += sign;
            }
            FaceKind::Inessential => {}
            FaceKind::Invalid => {
                return Err(Error::Precondition(format!("face at dart {} is invalid", faces.cycles[f][0])))
            }
        }
    }
    Ok(c)
}

/// Structural and label validity; the error a surgery operation raises when
/// its own output is malformed.
pub(crate) fn ensure_valid(d: &Diagram, table: &RelatorTable) -> Result<()> {
    match validate_diagram(d, table).first_failure() {
        None => Ok(()),
        Some(c) => Err(Error::Precondition(format!("{}: {}", c.name, c.detail))),
    }
}
