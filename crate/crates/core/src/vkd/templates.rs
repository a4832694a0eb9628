//! Replacement diagrams for Operation 4. Each is a cactus of petal faces,
//! which is enough for the signed counts to come out right.

use super::diagram::Diagram;
use super::ops::{attach_face, attach_spike};
use crate::error::Result;
use crate::words::{invert_letters, Letter};

/// Petal faces at a single vertex, in boundary order; the boundary reads
/// the petal words concatenated.
pub fn petal_chain(presentation: &str, petals: &[Vec<Letter>]) -> Result<Diagram> {
    let mut d = Diagram::point(presentation);
    for p in petals {
        let n = d.boundary_path().len();
        // corner before position 0, keeping the earlier petals first: append
        // at the end of the boundary by inserting before the base and then
        // rotating back.
        d = attach_face(&d, 0, 0, p)?;
        if n > 0 {
            let path = d.boundary_path();
            d.base = Some(path[p.len()]);
        }
    }
    Ok(d)
}

/// Boundary `s u s⁻¹ u⁻¹` up to rotation: an `s`-edge with a `u`-petal at
/// its far end and a `u⁻¹`-petal at its start.
pub fn commutator_template(presentation: &str, s: Letter, u: &[Letter]) -> Result<Diagram> {
    let d = attach_spike(&Diagram::point(presentation), 0, &[s])?;
    let d = attach_face(&d, 1, 0, u)?;
    attach_face(&d, 0, 0, &invert_letters(u))
}

/// `l` petals reading `u`.
pub fn flower_template(presentation: &str, u: &[Letter], l: usize) -> Result<Diagram> {
    petal_chain(presentation, &vec![u.to_vec(); l])
}

/// A `u`-petal and a `v⁻¹`-petal at one vertex.
pub fn link_template(presentation: &str, u: &[Letter], v: &[Letter]) -> Result<Diagram> {
    petal_chain(presentation, &[u.to_vec(), invert_letters(v)])
}
