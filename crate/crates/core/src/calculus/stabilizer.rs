use std::collections::BTreeSet;

use super::LinkClass;
use crate::error::{Error, Result};
use crate::group::{Group, GroupKind, Word};
use crate::tree::{canonicalize_edge, Tree0Elem, TreeModule};

/// A nontrivial cycle of the permutation `g -> psi_i g psi_j^-1` on the
/// decorations of the block `z_ij` (for `i = j` together with their inverses).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationOrbit {
    pub i: usize,
    pub j: usize,
    pub elements: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizerVerdict {
    NotStabilizer,
    Untwisted,
    Twisted(Vec<ConjugationOrbit>),
}

pub fn stabilizer_classify(z: &LinkClass, psi: &[Word]) -> Result<StabilizerVerdict> {
    let moved = z.z().psi_action(psi)?;
    if &moved != z.z() {
        return Ok(StabilizerVerdict::NotStabilizer);
    }
    let m = z.m();
    let mut orbits = Vec::new();
    for i in 1..=m {
        for j in i..=m {
            let block = z.block(i, j);
            if block.is_empty() {
                continue;
            }
            let mut support: BTreeSet<Word> = BTreeSet::new();
            for (g, _) in &block {
                support.insert(g.clone());
                if i == j {
                    support.insert(g.inv());
                }
            }
            let act = |g: &Word| &(&psi[i - 1] * g) * &psi[j - 1].inv();
            let mut done: BTreeSet<Word> = BTreeSet::new();
            let starts: Vec<Word> = block.iter().map(|(g, _)| g.clone()).chain(support.iter().cloned()).collect();
            for g in &starts {
                if done.contains(g) {
                    continue;
                }
                let mut cycle = vec![g.clone()];
                done.insert(g.clone());
                let mut cur = act(g);
                while &cur != g && support.contains(&cur) && done.insert(cur.clone()) {
                    cycle.push(cur.clone());
                    cur = act(&cur);
                }
                if cycle.len() > 1 {
                    orbits.push(ConjugationOrbit { i, j, elements: cycle });
                }
            }
        }
    }
    Ok(if orbits.is_empty() { StabilizerVerdict::Untwisted } else { StabilizerVerdict::Twisted(orbits) })
}

/// Whisker changes `psi` with entries of length at most `radius` that fix `z`.
pub fn stabilizer_candidates(z: &LinkClass, radius: usize) -> Result<Vec<Vec<Word>>> {
    let ball = z.group().ball(radius);
    let mut tuples: Vec<Vec<Word>> = vec![Vec::new()];
    for _ in 0..z.m() {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                ball.iter().map(move |w| {
                    let mut t = t.clone();
                    t.push(w.clone());
                    t
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for t in tuples {
        if &z.z().psi_action(&t)? == z.z() {
            out.push(t);
        }
    }
    Ok(out)
}

/// Whether the group admits twisted stabilizers at all: the documented
/// criterion is the presence of a Klein-bundle piece.
pub fn twisting_possible(group: &Group) -> bool {
    group.contains_klein()
}

/// Whether a Klein-group knot value has the twisted form for `psi = a^{2r+1} f^s`:
/// coefficients constant on the conjugation orbits of `psi`, with some
/// coefficient outside the central terms `a^{2k}` nonzero.
pub fn klein_twisted_form_check(z: &Tree0Elem, psi: &Word) -> Result<bool> {
    let group = z.group();
    if !matches!(group.kind(), GroupKind::Klein) {
        return Err(Error::Unsupported("twisted-form check needs the Klein group".into()));
    }
    if z.m() != 1 {
        return Err(Error::Unsupported("twisted-form check is for knots".into()));
    }
    if psi.group() != group {
        return Err(Error::GroupMismatch);
    }
    let (a, f) = (group.spec().offset(), group.spec().offset() + 1);
    if psi.exponent_of(a) % 2 == 0 {
        return Err(Error::Domain(format!("{} is even in a and cannot twist", psi)));
    }
    let mut noncentral = false;
    for (e, c) in z.terms() {
        let image = e.deco.conj(psi);
        let target = canonicalize_edge(1, 1, &image, z.mode())?;
        if target.map_or(0, |t| z.coeff(&t)) != c {
            return Ok(false);
        }
        if e.deco.exponent_of(f) != 0 || e.deco.exponent_of(a) % 2 != 0 {
            noncentral = true;
        }
    }
    Ok(noncentral)
}
