use super::{sigma_of, LinkClass, SphereKind, SphereSpec};
use crate::error::{Error, Result};
use crate::group::Word;
use crate::ring::RingElem;
use crate::tree::{T1Mode, Tree1Elem};

fn check(z: &LinkClass, sphere: &SphereSpec) -> Result<()> {
    if z.group() != sphere.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

fn add_sphere_sum(out: &mut Tree1Elem, z: &LinkClass, sphere: &SphereSpec, k: usize) -> Result<()> {
    let group = z.group();
    let one = RingElem::constant(group, 1);
    for (e, c) in z.z().terms() {
        let s = sigma_of(sphere, &e.deco)?.expand().left_mul(sphere.whisker());
        let g = RingElem::monomial(e.deco.clone(), 1);
        out.add_ring_tree([e.i, e.j, k], [&g, &one, &s], c)?;
    }
    Ok(())
}

/// `tau_1(L, aS) = sum e_p (g_p, 1, a sigma_S(g_p))_{ijS}`; the sphere is label `m + 1`.
pub fn pairing_tau1_link_sphere(z: &LinkClass, sphere: &SphereSpec) -> Result<Tree1Elem> {
    check(z, sphere)?;
    let m = z.m();
    let mut out = Tree1Elem::zero(z.group(), m + 1, T1Mode::Plain);
    add_sphere_sum(&mut out, z, sphere, m + 1)?;
    Ok(out)
}

/// The same pairing for a single edge `(g)_ij`, summed over the points where
/// the arc representing `g` crosses a separating sphere: each crossing after
/// the prefix `p` contributes `+-(p, (p^-1 g)^-1, a)_{ijS}`.
pub fn pairing_crossings(g: &Word, i: usize, j: usize, m: usize, sphere: &SphereSpec) -> Result<Tree1Elem> {
    let mprime = match sphere.kind() {
        SphereKind::Separating { mprime } => mprime,
        _ => return Err(Error::InvalidSplit("crossing expansion needs a separating sphere".into())),
    };
    let group = g.group();
    let mut out = Tree1Elem::zero(group, m + 1, T1Mode::Plain);
    let mut prefix = group.identity();
    let mut inside = false;
    for (fi, w) in group.factor_syllables(g) {
        let now = mprime.contains(&fi);
        if now != inside {
            let suffix_inv = &g.inv() * &prefix;
            out.add_tree([i, j, m + 1], [prefix.clone(), suffix_inv, sphere.whisker().clone()], if now { 1 } else { -1 })?;
            inside = now;
        }
        prefix = &prefix * &w;
    }
    if inside {
        let suffix_inv = &g.inv() * &prefix;
        out.add_tree([i, j, m + 1], [prefix, suffix_inv, sphere.whisker().clone()], -1)?;
    }
    Ok(out)
}

/// A Phi(z) generator: the pairing with the sphere label replaced by component `k`.
pub fn phi_generator(z: &LinkClass, sphere: &SphereSpec, k: usize, labels: usize) -> Result<Tree1Elem> {
    check(z, sphere)?;
    if k == 0 || k > z.m() {
        return Err(Error::LabelOutOfRange { label: k, max: z.m() });
    }
    let mut out = Tree1Elem::zero(z.group(), labels.max(z.m()), T1Mode::Plain);
    add_sphere_sum(&mut out, z, sphere, k)?;
    Ok(out)
}

/// One generator per (sphere, whisker, component); the effective whisker is
/// `a * w_S` for `a` in `whiskers` and the sphere's own whisker `w_S`.
pub fn phi_generators(z: &LinkClass, spheres: &[SphereSpec], whiskers: &[Word], labels: usize) -> Result<Vec<Tree1Elem>> {
    let mut out = Vec::new();
    for s in spheres {
        for a in whiskers {
            let sa = s.clone().with_whisker(a * s.whisker());
            for k in 1..=z.m() {
                out.push(phi_generator(z, &sa, k, labels)?);
            }
        }
    }
    Ok(out)
}
