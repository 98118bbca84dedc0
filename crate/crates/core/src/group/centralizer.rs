use super::{Group, GroupKind, GroupSpec, Word};
use crate::error::{Error, Result};

pub(super) fn centralizer_generators(g: &Group, gamma: &Word) -> Result<Vec<Word>> {
    if gamma.group() != g {
        return Err(Error::GroupMismatch);
    }
    if gamma.is_identity() {
        return Ok(g.generators());
    }
    match g.kind() {
        GroupKind::FreeProduct(_) => Err(Error::Unsupported(
            "centralizers in free products are not implemented".into(),
        )),
        GroupKind::DirectProductWithZ(base) => {
            let fib = g.spec().fiber_index().unwrap();
            let base_part: Vec<_> = gamma.syllables().iter().copied().filter(|s| s.0 != fib).collect();
            if base_part.is_empty() {
                return Ok(g.generators());
            }
            let mut out = leaf_centralizer(g, base, &base_part);
            out.push(g.generator(fib));
            Ok(out)
        }
        _ => Ok(leaf_centralizer(g, g.spec(), gamma.syllables())),
    }
}

// Centralizer of a nontrivial element of a non-product factor, as words of the ambient group.
fn leaf_centralizer(g: &Group, spec: &GroupSpec, syl: &[(usize, i64)]) -> Vec<Word> {
    let off = spec.offset();
    match spec.kind() {
        GroupKind::Cyclic | GroupKind::FreeAbelian(_) => {
            (off..off + spec.ngens()).map(|i| g.generator(i)).collect()
        }
        GroupKind::Free(_) => vec![g.normalize(&free_root(syl))],
        GroupKind::Klein => {
            let n = syl.iter().find(|s| s.0 == off).map_or(0, |s| s.1);
            let l = syl.iter().find(|s| s.0 == off + 1).map_or(0, |s| s.1);
            if n % 2 != 0 {
                vec![g.normalize(&[(off, 1), (off + 1, l)])]
            } else if l == 0 {
                vec![g.generator(off), g.generator(off + 1)]
            } else {
                vec![g.normalize(&[(off, 2)]), g.generator(off + 1)]
            }
        }
        _ => unreachable!("leaf kinds only"),
    }
}

/// Primitive root of a nontrivial freely reduced word.
pub(crate) fn free_root(syl: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let lt: Vec<(usize, i64)> = syl
        .iter()
        .flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize))
        .collect();
    let (mut i, mut j) = (0usize, lt.len() - 1);
    while i < j && lt[i].0 == lt[j].0 && lt[i].1 == -lt[j].1 {
        i += 1;
        j -= 1;
    }
    let core = &lt[i..=j];
    let n = core.len();
    let p = (1..=n)
        .find(|p| n % p == 0 && (0..n).all(|k| core[k] == core[k % p]))
        .unwrap();
    let mut out: Vec<(usize, i64)> = lt[..i].to_vec();
    out.extend_from_slice(&core[..p]);
    out.extend(lt[..i].iter().rev().map(|&(g, e)| (g, -e)));
    out
}
