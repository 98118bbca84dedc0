use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::{check_label, check_psi, T1Mode, TreeModule};
use crate::error::{Error, Result};
use crate::group::{Group, GroupKind, Word};
use crate::ring::{write_signed_terms, RingElem};

/// A Y-tree `(a, b, c)_ijk` with all edges oriented toward the trivalent vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YTree {
    labels: [usize; 3],
    decos: [Word; 3],
}

impl YTree {
    pub fn labels(&self) -> [usize; 3] {
        self.labels
    }

    pub fn decos(&self) -> &[Word; 3] {
        &self.decos
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, pair: bool) -> fmt::Result {
        let [a, b, c] = &self.decos;
        if pair && self.labels == [1, 1, 1] && a.is_identity() {
            write!(f, "({},{})", b, c)
        } else {
            let [i, j, k] = self.labels;
            write!(f, "Y[{},{},{}]({}; {}; {})", i, j, k, a, b, c)
        }
    }
}

impl Ord for YTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels.cmp(&other.labels).then_with(|| self.decos.cmp(&other.decos))
    }
}

impl PartialOrd for YTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for YTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

/// Result of canonicalizing a single Y-tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YCanon {
    pub tree: YTree,
    /// Sign relating the input to `tree`; meaningless when `torsion` is set.
    pub sign: i64,
    pub torsion: bool,
}

// Non-identity permutations of the three branches with their signs.
const PERMS: [([usize; 3], i64); 5] = [
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
];

// Trivialises the first decoration by a right translation.
fn hol(labels: [usize; 3], decos: &[Word; 3], mode: &T1Mode) -> Result<YTree> {
    let inv0 = decos[0].inv();
    let u = &decos[1] * &inv0;
    let v = &decos[2] * &inv0;
    let (u, v) = match mode {
        T1Mode::Plain => (u, v),
        T1Mode::LeftCoset(c) => c.pair_rep(&u, &v)?,
    };
    Ok(YTree { labels, decos: [decos[0].group().identity(), u, v] })
}

fn monotone(t: &YTree) -> bool {
    (0..2).all(|k| t.labels[k] != t.labels[k + 1] || t.decos[k] <= t.decos[k + 1])
}

fn key_cmp(a: &YTree, b: &YTree) -> Ordering {
    a.labels
        .cmp(&b.labels)
        .then_with(|| monotone(b).cmp(&monotone(a)))
        .then_with(|| a.decos.cmp(&b.decos))
}

/// Canonical orbit representative under the AS, HOL and FR relations.
///
/// The orbit is enumerated exhaustively; an element met with both signs is
/// 2-torsion. The representative minimises (labels, label blocks with
/// non-decreasing decorations first, decorations).
pub fn canonicalize_y(labels: [usize; 3], decos: [Word; 3], mode: &T1Mode) -> Result<YCanon> {
    let start = hol(labels, &decos, mode)?;
    let mut seen: HashMap<YTree, i64> = HashMap::new();
    seen.insert(start.clone(), 1);
    let mut queue = VecDeque::from([start]);
    let mut torsion = false;
    while let Some(s) = queue.pop_front() {
        let sign = seen[&s];
        let mut next = Vec::with_capacity(8);
        for (p, sg) in PERMS {
            let l = [s.labels[p[0]], s.labels[p[1]], s.labels[p[2]]];
            let d = [s.decos[p[0]].clone(), s.decos[p[1]].clone(), s.decos[p[2]].clone()];
            next.push((hol(l, &d, mode)?, sign * sg));
        }
        // Framing: a tree with two identical branches equals the tree in
        // which one of them is replaced by a copy of the third branch.
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if s.labels[p] == s.labels[q] && s.decos[p] == s.decos[q] {
                let r = 3 - p - q;
                let mut l = s.labels;
                let mut d = s.decos.clone();
                l[q] = l[r];
                d[q] = d[r].clone();
                next.push((hol(l, &d, mode)?, sign));
            }
        }
        for (t, sg) in next {
            match seen.get(&t) {
                Some(&old) => torsion |= old != sg,
                None => {
                    seen.insert(t.clone(), sg);
                    queue.push_back(t);
                }
            }
        }
    }
    let (tree, sign) = seen.into_iter().min_by(|a, b| key_cmp(&a.0, &b.0)).unwrap();
    Ok(YCanon { tree, sign: if torsion { 1 } else { sign }, torsion })
}

/// One term of a [`Tree1Elem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term1 {
    pub tree: YTree,
    pub coeff: i64,
    pub torsion: bool,
}

/// An element of the order-1 tree group: integer coefficients on free
/// generators and bits on 2-torsion generators.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree1Elem {
    group: Group,
    m: usize,
    mode: T1Mode,
    free: BTreeMap<YTree, i64>,
    torsion: BTreeSet<YTree>,
}

impl Tree1Elem {
    pub fn zero(group: &Group, m: usize, mode: T1Mode) -> Tree1Elem {
        Tree1Elem { group: group.clone(), m, mode, free: BTreeMap::new(), torsion: BTreeSet::new() }
    }

    pub fn single(group: &Group, m: usize, mode: T1Mode, labels: [usize; 3], decos: [Word; 3], c: i64) -> Result<Tree1Elem> {
        let mut t = Tree1Elem::zero(group, m, mode);
        t.add_tree(labels, decos, c)?;
        Ok(t)
    }

    /// `(g, h) := (1, g, h)` with every label equal to 1.
    pub fn pair(g: &Word, h: &Word, m: usize, mode: T1Mode) -> Result<Tree1Elem> {
        let grp = g.group().clone();
        Tree1Elem::single(&grp, m, mode, [1, 1, 1], [grp.identity(), g.clone(), h.clone()], 1)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> &T1Mode {
        &self.mode
    }

    /// Same group, labels and mode.
    pub fn compatible(&self, other: &Tree1Elem) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.m != other.m || self.mode != other.mode {
            return Err(Error::Incompatible("order-1 trees differ in labels or mode".into()));
        }
        Ok(())
    }

    pub fn add_tree(&mut self, labels: [usize; 3], decos: [Word; 3], c: i64) -> Result<()> {
        for l in labels {
            check_label(l, self.m)?;
        }
        if decos.iter().any(|d| d.group() != &self.group) {
            return Err(Error::GroupMismatch);
        }
        if c == 0 {
            return Ok(());
        }
        let canon = canonicalize_y(labels, decos, &self.mode)?;
        self.add_canonical(canon.tree, canon.sign * c, canon.torsion);
        Ok(())
    }

    /// Adds `c * (a, b, c)_ijk` with ring-valued decorations, expanded multilinearly.
    pub fn add_ring_tree(&mut self, labels: [usize; 3], decos: [&RingElem; 3], c: i64) -> Result<()> {
        for (a, ca) in decos[0].terms() {
            for (b, cb) in decos[1].terms() {
                for (d, cd) in decos[2].terms() {
                    self.add_tree(labels, [a.clone(), b.clone(), d.clone()], c * ca * cb * cd)?;
                }
            }
        }
        Ok(())
    }

    fn add_canonical(&mut self, tree: YTree, c: i64, torsion: bool) {
        if torsion {
            if c % 2 != 0 && !self.torsion.remove(&tree) {
                self.torsion.insert(tree);
            }
        } else if c != 0 {
            let v = self.free.entry(tree.clone()).or_insert(0);
            *v += c;
            if *v == 0 {
                self.free.remove(&tree);
            }
        }
    }

    pub fn free_terms(&self) -> impl Iterator<Item = (&YTree, i64)> {
        self.free.iter().map(|(t, c)| (t, *c))
    }

    pub fn torsion_terms(&self) -> impl Iterator<Item = &YTree> {
        self.torsion.iter()
    }

    /// All terms in canonical order.
    pub fn terms(&self) -> Vec<Term1> {
        let mut v: Vec<Term1> = self
            .free
            .iter()
            .map(|(t, c)| Term1 { tree: t.clone(), coeff: *c, torsion: false })
            .chain(self.torsion.iter().map(|t| Term1 { tree: t.clone(), coeff: 1, torsion: true }))
            .collect();
        v.sort_by(|a, b| a.tree.cmp(&b.tree));
        v
    }

    pub fn scale(&self, c: i64) -> Tree1Elem {
        let mut out = self.zero_like();
        if c != 0 {
            out.free = self.free.iter().map(|(t, v)| (t.clone(), v * c)).collect();
        }
        if c % 2 != 0 {
            out.torsion = self.torsion.clone();
        }
        out
    }

    pub fn try_sub(&self, other: &Tree1Elem) -> Result<Tree1Elem> {
        self.try_add(&other.negated())
    }

    pub fn plus(&self, other: &Tree1Elem) -> Tree1Elem {
        self.try_add(other).expect("compatible order-1 trees")
    }

    pub fn minus(&self, other: &Tree1Elem) -> Tree1Elem {
        self.try_sub(other).expect("compatible order-1 trees")
    }

    fn uses_pairs(&self) -> bool {
        self.m == 1
    }
}

impl TreeModule for Tree1Elem {
    fn zero_like(&self) -> Self {
        Tree1Elem::zero(&self.group, self.m, self.mode.clone())
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (t, c) in &other.free {
            out.add_canonical(t.clone(), *c, false);
        }
        for t in &other.torsion {
            out.add_canonical(t.clone(), 1, true);
        }
        Ok(out)
    }

    fn negated(&self) -> Self {
        self.scale(-1)
    }

    /// `(a, b, c)_ijk -> (psi_i a, psi_j b, psi_k c)_ijk`.
    fn psi_action(&self, psi: &[Word]) -> Result<Self> {
        check_psi(psi, self.m, self.mode.coset())?;
        let mut out = self.zero_like();
        for term in self.terms() {
            let l = term.tree.labels;
            let d = &term.tree.decos;
            let moved = [&psi[l[0] - 1] * &d[0], &psi[l[1] - 1] * &d[1], &psi[l[2] - 1] * &d[2]];
            out.add_tree(l, moved, term.coeff)?;
        }
        Ok(out)
    }

    fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    fn label_count(&self) -> usize {
        self.m
    }
}

impl fmt::Display for Tree1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair = self.uses_pairs();
        let terms: Vec<(YTree, i64)> = self.terms().into_iter().map(|t| (t.tree, t.coeff)).collect();
        write_signed_terms(f, &terms, |f, t, c| {
            if c != 1 {
                write!(f, "{}*", c)?;
            }
            t.write(f, pair)
        })
    }
}

impl fmt::Debug for Tree1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree1Elem({})", self)
    }
}

/// Normal-form generators with all labels equal, for right-ordered groups:
/// free `(g, h)` with `1 < g < h` and torsion `(1, g)` with `1 <= g`, over
/// words whose exponents are bounded by `bound` in absolute value.
pub fn right_order_normal_forms(group: &Group, bound: i64) -> Result<(Vec<YTree>, Vec<YTree>)> {
    let k = match group.kind() {
        GroupKind::Cyclic => 1,
        GroupKind::FreeAbelian(k) => *k,
        _ => {
            return Err(Error::Unsupported(
                "normal-form enumeration needs a right-ordered group".into(),
            ))
        }
    };
    let mut words = vec![group.identity()];
    for g in 0..k {
        let gen = group.generator(g);
        words = words
            .iter()
            .flat_map(|w| (-bound..=bound).map(|e| w * &gen.pow(e)).collect::<Vec<_>>())
            .collect();
    }
    words.sort();
    let one = group.identity();
    let mk = |a: &Word, b: &Word| YTree { labels: [1, 1, 1], decos: [one.clone(), a.clone(), b.clone()] };
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for g in words.iter().filter(|w| **w >= one) {
        torsion.push(mk(&one, g));
        if *g > one {
            for h in words.iter().filter(|h| *h > g) {
                free.push(mk(g, h));
            }
        }
    }
    Ok((free, torsion))
}
