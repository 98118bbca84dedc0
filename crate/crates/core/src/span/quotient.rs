use super::window::{solve_window, RelationFamily, WindowVerdict};
use crate::error::{Error, Result};
use crate::group::Word;
use crate::tree::{Tree1Elem, TreeModule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientVerdict {
    /// `u - psi . v` lies in the span of the window of this radius.
    Equal { psi: Vec<Word>, radius: usize, coefficients: Vec<(String, i64)> },
    /// No whisker change and combination found up to the bounds. Not a proof.
    NotEqualUpTo { r_max: usize, psi_tried: usize },
}

/// Searches the windows in increasing radius and, within each, the whisker
/// changes in the order given; the first success is reported.
pub fn quotient_equal(
    u: &Tree1Elem,
    v: &Tree1Elem,
    family: &dyn RelationFamily,
    psi_candidates: &[Vec<Word>],
    r_max: usize,
    cap: usize,
) -> Result<QuotientVerdict> {
    u.compatible(v)?;
    let identity = vec![u.group().identity(); u.m()];
    let mut cands: Vec<Vec<Word>> = vec![identity];
    for p in psi_candidates {
        if p.len() != u.m() {
            return Err(Error::LengthMismatch { expected: u.m(), got: p.len() });
        }
        if !cands.contains(p) {
            cands.push(p.clone());
        }
    }
    let targets: Vec<Tree1Elem> = cands
        .iter()
        .map(|p| Ok(u.minus(&v.psi_action(p)?)))
        .collect::<Result<_>>()?;
    for r in 0..=r_max {
        for (p, t) in cands.iter().zip(&targets) {
            if let Some(WindowVerdict::Witness { radius, coefficients }) = solve_window(t, family, r, cap)? {
                return Ok(QuotientVerdict::Equal { psi: p.clone(), radius, coefficients });
            }
        }
    }
    Ok(QuotientVerdict::NotEqualUpTo { r_max, psi_tried: cands.len() })
}
