use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{check_label, check_psi, T0Mode, TreeModule};
use crate::error::{Error, Result};
use crate::group::{Group, Word};
use crate::ring::{write_signed_terms, RingElem};

/// A canonical order-0 tree `(g)_ij` with `i <= j`; for `i = j` the
/// decoration is the larger of `g`, `g^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge0 {
    pub i: usize,
    pub j: usize,
    pub deco: Word,
}

impl Ord for Edge0 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.i, self.j).cmp(&(other.i, other.j)).then_with(|| self.deco.cmp(&other.deco))
    }
}

impl PartialOrd for Edge0 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{},{}]({})", self.i, self.j, self.deco)
    }
}

/// Canonical form of `(g)_ij`. `None` means the edge is zero.
pub fn canonicalize_edge(i: usize, j: usize, g: &Word, mode: &T0Mode) -> Result<Option<Edge0>> {
    let rep = |w: &Word| -> Result<Word> {
        match mode {
            T0Mode::Plain => Ok(w.clone()),
            T0Mode::DoubleCoset(c) => c.double_rep(w),
        }
    };
    let (i, j, g) = if i > j { (j, i, g.inv()) } else { (i, j, g.clone()) };
    let mut deco = rep(&g)?;
    if i == j {
        let other = rep(&g.inv())?;
        if other > deco {
            deco = other;
        }
        if deco.is_identity() {
            return Ok(None);
        }
    }
    Ok(Some(Edge0 { i, j, deco }))
}

/// An element of the order-0 tree group.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree0Elem {
    group: Group,
    m: usize,
    mode: T0Mode,
    terms: BTreeMap<Edge0, i64>,
}

impl Tree0Elem {
    pub fn zero(group: &Group, m: usize, mode: T0Mode) -> Tree0Elem {
        Tree0Elem { group: group.clone(), m, mode, terms: BTreeMap::new() }
    }

    /// `sum_g c_g (g)_11` for a knot.
    pub fn from_knot_ring(r: &RingElem, mode: T0Mode) -> Result<Tree0Elem> {
        let mut t = Tree0Elem::zero(r.group(), 1, mode);
        for (w, c) in r.terms() {
            t.add_edge(1, 1, w, c)?;
        }
        Ok(t)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> &T0Mode {
        &self.mode
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Edge0, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn coeff(&self, e: &Edge0) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_edge(&mut self, i: usize, j: usize, g: &Word, c: i64) -> Result<()> {
        check_label(i, self.m)?;
        check_label(j, self.m)?;
        if g.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        if let Some(e) = canonicalize_edge(i, j, g, &self.mode)? {
            self.add_canonical(e, c);
        }
        Ok(())
    }

    fn add_canonical(&mut self, e: Edge0, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    /// The block `z_ij` as `(g, coefficient)` pairs, read in the direction `i -> j`.
    pub fn block(&self, i: usize, j: usize) -> Vec<(Word, i64)> {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.terms
            .iter()
            .filter(|(e, _)| e.i == a && e.j == b)
            .map(|(e, c)| (if i <= j { e.deco.clone() } else { e.deco.inv() }, *c))
            .collect()
    }

    fn compatible(&self, other: &Tree0Elem) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.m != other.m || self.mode != other.mode {
            return Err(Error::Incompatible("order-0 trees differ in labels or mode".into()));
        }
        Ok(())
    }

    pub fn scale(&self, c: i64) -> Tree0Elem {
        let mut out = self.zero_like();
        if c != 0 {
            out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        }
        out
    }
}

impl TreeModule for Tree0Elem {
    fn zero_like(&self) -> Self {
        Tree0Elem::zero(&self.group, self.m, self.mode.clone())
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_canonical(e.clone(), *c);
        }
        Ok(out)
    }

    fn negated(&self) -> Self {
        self.scale(-1)
    }

    fn psi_action(&self, psi: &[Word]) -> Result<Self> {
        check_psi(psi, self.m, self.mode.coset())?;
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let g = &(&psi[e.i - 1] * &e.deco) * &psi[e.j - 1].inv();
            out.add_edge(e.i, e.j, &g, *c)?;
        }
        Ok(out)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn label_count(&self) -> usize {
        self.m
    }
}

impl fmt::Display for Tree0Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(&Edge0, i64)> = self.terms().collect();
        write_signed_terms(f, &terms, |f, e, c| {
            if c == 1 {
                write!(f, "{}", e)
            } else {
                write!(f, "{}*{}", c, e)
            }
        })
    }
}

impl fmt::Debug for Tree0Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree0Elem({})", self)
    }
}
