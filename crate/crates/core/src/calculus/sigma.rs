use std::fmt;

use super::{SphereKind, SphereSpec};
use crate::error::{Error, Result};
use crate::group::{Group, Word};
use crate::ring::RingElem;

/// `sign * head * tail`, the head kept in summation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaTerm {
    pub sign: i64,
    pub head: Vec<(Word, i64)>,
    pub tail: Word,
}

impl SigmaTerm {
    pub fn head_ring(&self, group: &Group) -> RingElem {
        RingElem::from_terms(group, self.head.iter().cloned())
    }
}

/// The value of a sphere map in factored form, one term per relevant syllable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sigma {
    group: Group,
    pub terms: Vec<SigmaTerm>,
}

impl Sigma {
    pub fn expand(&self) -> RingElem {
        let mut out = RingElem::zero(&self.group);
        for t in &self.terms {
            out = &out + &t.head_ring(&self.group).right_mul(&t.tail).scale(t.sign);
        }
        out
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.sign < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.head.len() > 1 {
                write!(f, "(")?;
            }
            for (k, (w, c)) in t.head.iter().enumerate() {
                match (k, *c < 0) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                match (c.abs(), w.is_identity()) {
                    (n, true) => write!(f, "{}", n)?,
                    (1, false) => write!(f, "{}", w)?,
                    (n, false) => write!(f, "{}*{}", n, w)?,
                }
            }
            if t.head.len() > 1 {
                write!(f, ")")?;
            }
            if !t.tail.is_identity() {
                write!(f, "*{}", t.tail)?;
            }
        }
        Ok(())
    }
}

fn product(group: &Group, parts: &[(usize, Word)]) -> Word {
    parts.iter().fold(group.identity(), |acc, (_, w)| &acc * w)
}

fn check_group(g: &Word, s: &SphereSpec) -> Result<()> {
    if g.group() != s.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// Alternating tail sum `sum_q (g_q - 1) beta_q` for `g = h_0 g_1 h_1 ... g_n h_n`.
pub fn sigma_separating(g: &Word, sphere: &SphereSpec) -> Result<Sigma> {
    check_group(g, sphere)?;
    let mprime = match sphere.kind() {
        SphereKind::Separating { mprime } => mprime,
        _ => return Err(Error::InvalidSplit("expected a separating sphere".into())),
    };
    let group = g.group();
    let syl = group.factor_syllables(g);
    let mut terms = Vec::new();
    let mut k = 0;
    while k < syl.len() {
        if !mprime.contains(&syl[k].0) {
            k += 1;
            continue;
        }
        let mut end = k + 1;
        while end < syl.len() && mprime.contains(&syl[end].0) {
            end += 1;
        }
        let block = product(group, &syl[k..end]);
        let head = vec![(block, 1), (group.identity(), -1)];
        terms.push(SigmaTerm { sign: 1, head, tail: product(group, &syl[end..]) });
        k = end;
    }
    Ok(Sigma { group: group.clone(), terms })
}

/// `sum_q eps_q (sum_{l=1}^{r_q} x^{eps_q (l + (eps_q - 1)/2)}) beta_q` over the
/// syllables `x^{eps_q r_q}` of `g`.
pub fn sigma_nonseparating(g: &Word, sphere: &SphereSpec) -> Result<Sigma> {
    check_group(g, sphere)?;
    let factor = match sphere.kind() {
        SphereKind::NonSeparating { factor } => *factor,
        _ => return Err(Error::InvalidSplit("expected a non-separating sphere".into())),
    };
    let group = g.group();
    let x = group.generator(group.factor_spec(factor).unwrap().offset());
    let syl = group.factor_syllables(g);
    let mut terms = Vec::new();
    for (k, (fi, w)) in syl.iter().enumerate() {
        if *fi != factor {
            continue;
        }
        let e = w.syllables()[0].1;
        let eps = e.signum();
        // Listed with decreasing exponent of x.
        let ls: Vec<i64> = if eps > 0 { (1..=e.abs()).rev().collect() } else { (1..=e.abs()).collect() };
        let head = ls.into_iter().map(|l| (x.pow(eps * (l + (eps - 1) / 2)), 1)).collect();
        terms.push(SigmaTerm { sign: eps, head, tail: product(group, &syl[k + 1..]) });
    }
    Ok(Sigma { group: group.clone(), terms })
}

/// `sigma_S(g)` without the whisker.
pub fn sigma_of(sphere: &SphereSpec, g: &Word) -> Result<Sigma> {
    match sphere.kind() {
        SphereKind::Separating { .. } => sigma_separating(g, sphere),
        SphereKind::NonSeparating { .. } => sigma_nonseparating(g, sphere),
    }
}

/// Linear extension `sum c * a * sigma_S(g)` over a sphere combination, where
/// `a` is the sphere's whisker.
pub fn sigma(combination: &[(i64, SphereSpec)], g: &Word) -> Result<RingElem> {
    let mut out = RingElem::zero(g.group());
    for (c, s) in combination {
        let v = sigma_of(s, g)?.expand().left_mul(s.whisker()).scale(*c);
        out = out.try_add(&v)?;
    }
    Ok(out)
}
