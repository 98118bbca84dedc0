use crate::error::Result;
use crate::group::{Group, Word};
use crate::tree::{T1Mode, Tree1Elem};

/// Changes of the base clasp link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaspMove {
    /// `n` full twists of the band guiding the clasp `(g)_ij`.
    Twist { n: i64, g: Word, i: usize, j: usize },
    /// Transposition of guiding arc endpoints on components `i, j, k`.
    EndpointTransposition { g: Word, h: Word, i: usize, j: usize, k: usize },
    /// Transposition of two endpoints on the same arc of component `i`.
    SameArcTransposition { g: Word, i: usize },
}

/// `tau_1(L_z, L'_z)` for a single move.
pub fn clasp_move_delta(group: &Group, m: usize, mv: &ClaspMove) -> Result<Tree1Elem> {
    let one = group.identity();
    let mut out = Tree1Elem::zero(group, m, T1Mode::Plain);
    match mv {
        ClaspMove::Twist { n, g, i, j } => out.add_tree([*i, *i, *j], [one.clone(), one, g.clone()], *n)?,
        ClaspMove::EndpointTransposition { g, h, i, j, k } => {
            out.add_tree([*i, *j, *k], [one, g.clone(), h.clone()], 1)?
        }
        ClaspMove::SameArcTransposition { g, i } => out.add_tree([*i, *i, *i], [one, g.inv(), g.clone()], 1)?,
    }
    Ok(out)
}
