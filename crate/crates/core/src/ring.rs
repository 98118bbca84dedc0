//! The integral group ring.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::group::{Group, Word};

/// A finitely supported integer combination of group elements.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    group: Group,
    terms: BTreeMap<Word, i64>,
}

impl RingElem {
    pub fn zero(group: &Group) -> RingElem {
        RingElem { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(group: &Group, c: i64) -> RingElem {
        RingElem::monomial(group.identity(), c)
    }

    pub fn monomial(w: Word, c: i64) -> RingElem {
        let mut r = RingElem::zero(w.group());
        r.add_term(w, c);
        r
    }

    pub fn from_terms(group: &Group, terms: impl IntoIterator<Item = (Word, i64)>) -> RingElem {
        let mut r = RingElem::zero(group);
        for (w, c) in terms {
            r.add_term(w, c);
        }
        r
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Terms in ascending TotalOrder.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn coeff(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single word of a monomial with coefficient 1.
    pub fn as_word(&self) -> Option<Word> {
        match self.terms.iter().next() {
            Some((w, 1)) if self.terms.len() == 1 => Some(w.clone()),
            _ => None,
        }
    }

    /// The integer of a constant element (an integer multiple of 1, or 0).
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_identity().then_some(*c)
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: i64) -> RingElem {
        if c == 0 {
            return RingElem::zero(&self.group);
        }
        RingElem {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn left_mul(&self, w: &Word) -> RingElem {
        RingElem::from_terms(&self.group, self.terms.iter().map(|(u, c)| (w * u, *c)))
    }

    pub fn right_mul(&self, w: &Word) -> RingElem {
        RingElem::from_terms(&self.group, self.terms.iter().map(|(u, c)| (u * w, *c)))
    }

    /// The involution induced by `g -> g^-1`.
    pub fn bar(&self) -> RingElem {
        RingElem::from_terms(&self.group, self.terms.iter().map(|(u, c)| (u.inv(), *c)))
    }

    /// Representative modulo `Z[1] + {z - bar z}`: drop the identity and merge
    /// each `{g, g^-1}` onto its larger member.
    pub fn mu_reduce(&self) -> RingElem {
        let mut out = RingElem::zero(&self.group);
        for (w, c) in &self.terms {
            if w.is_identity() {
                continue;
            }
            let wi = w.inv();
            out.add_term(if wi > *w { wi } else { w.clone() }, *c);
        }
        out
    }

    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &RingElem {
    type Output = RingElem;

    fn add(self, rhs: &RingElem) -> RingElem {
        debug_assert!(self.group == rhs.group);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl Sub for &RingElem {
    type Output = RingElem;

    fn sub(self, rhs: &RingElem) -> RingElem {
        self + &rhs.scale(-1)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        self.scale(-1)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;

    fn mul(self, rhs: &RingElem) -> RingElem {
        debug_assert!(self.group == rhs.group);
        let mut out = RingElem::zero(&self.group);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

/// Writes `c*w` style terms joined by ` + ` / ` - `.
pub(crate) fn write_signed_terms<T, F>(f: &mut fmt::Formatter<'_>, terms: &[(T, i64)], mut atom: F) -> fmt::Result
where
    F: FnMut(&mut fmt::Formatter<'_>, &T, i64) -> fmt::Result,
{
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (t, c)) in terms.iter().enumerate() {
        let c = *c;
        if i == 0 {
            if c < 0 {
                write!(f, "-")?;
            }
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        atom(f, t, c.abs())?;
    }
    Ok(())
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(&Word, i64)> = self.terms.iter().rev().map(|(w, c)| (w, *c)).collect();
        write_signed_terms(f, &terms, |f, w, c| {
            if w.is_identity() {
                write!(f, "{}", c)
            } else if c == 1 {
                write!(f, "{}", w)
            } else {
                write!(f, "{}*{}", c, w)
            }
        })
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({})", self)
    }
}
