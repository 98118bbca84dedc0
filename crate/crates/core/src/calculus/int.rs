use super::{EssentialKnotClass, LinkClass};
use crate::error::{Error, Result};
use crate::group::Word;
use crate::ring::RingElem;
use crate::tree::{T1Mode, Tree1Elem};

/// The INT(z) relation for component `i`, label `j` and decoration `g`:
///
/// `(1, sum_{k != i} z_ki, g)_{ikj} + (1, z_ii + bar z_ii, g)_{iij}`
///
/// which is the negative, by AS, of `(1, g, ...)_{ijk} + (1, g, ...)_{iji}`.
/// Written this way the relations for `z = f + f^3` are exactly the
/// `Delta_r = (z + bar z, f^r)`.
pub fn int_relations_null(z: &LinkClass, g: &Word, i: usize, j: usize, labels: usize) -> Result<Tree1Elem> {
    let m = z.m();
    let n = labels.max(m);
    if g.group() != z.group() {
        return Err(Error::GroupMismatch);
    }
    if i == 0 || i > m {
        return Err(Error::LabelOutOfRange { label: i, max: m });
    }
    let group = z.group();
    let one = group.identity();
    let mut out = Tree1Elem::zero(group, n, T1Mode::Plain);
    for k in (1..=m).filter(|&k| k != i) {
        for (h, c) in z.block(k, i) {
            out.add_tree([i, k, j], [one.clone(), h, g.clone()], c)?;
        }
    }
    for (h, c) in z.block(i, i) {
        out.add_tree([i, i, j], [one.clone(), h.inv(), g.clone()], c)?;
        out.add_tree([i, i, j], [one.clone(), h, g.clone()], c)?;
    }
    Ok(out)
}

/// `(1, beta^r, (1 - beta^r)(z + bar z))` in the left-coset tree group.
pub fn int_relations_essential(k: &EssentialKnotClass, beta: &Word, r: i64) -> Result<Tree1Elem> {
    let gamma = k.gamma();
    if beta.group() != gamma.group() {
        return Err(Error::GroupMismatch);
    }
    if !beta.commutes_with(gamma) {
        return Err(Error::Domain(format!("{} does not centralize {}", beta, gamma)));
    }
    let group = gamma.group();
    let mut zz = RingElem::zero(group);
    for (e, c) in k.z().terms() {
        zz.add_term(e.deco.clone(), c);
        zz.add_term(e.deco.inv(), c);
    }
    let br = beta.pow(r);
    let factor = &RingElem::constant(group, 1) - &RingElem::monomial(br.clone(), 1);
    let c = &factor * &zz;
    let mut out = Tree1Elem::zero(group, 1, T1Mode::LeftCoset(k.coset().clone()));
    let one = RingElem::constant(group, 1);
    out.add_ring_tree([1, 1, 1], [&one, &RingElem::monomial(br, 1), &c], 1)?;
    Ok(out)
}
