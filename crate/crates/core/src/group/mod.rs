//! Supported fundamental groups, their normal forms and total orders.

mod centralizer;
mod word;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use word::{invert, multiply, Word};

/// Presentation kinds covered by the library. Every kind is torsion-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic,
    FreeAbelian(usize),
    Free(usize),
    /// `<a, f | a f a^-1 = f^-1>`, normal form `a^n f^l`.
    Klein,
    /// `base x <f>`; the fiber generator is the last generator.
    DirectProductWithZ(Box<GroupSpec>),
    FreeProduct(Vec<GroupSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    names: Vec<String>,
    factor_name: Option<String>,
    offset: usize,
}

impl GroupSpec {
    fn leaf(kind: GroupKind, names: &[&str]) -> Self {
        GroupSpec {
            kind,
            names: names.iter().map(|s| s.to_string()).collect(),
            factor_name: None,
            offset: 0,
        }
    }

    pub fn cyclic(x: &str) -> Self {
        Self::leaf(GroupKind::Cyclic, &[x])
    }

    pub fn free_abelian(names: &[&str]) -> Self {
        Self::leaf(GroupKind::FreeAbelian(names.len()), names)
    }

    pub fn free(names: &[&str]) -> Self {
        Self::leaf(GroupKind::Free(names.len()), names)
    }

    pub fn klein(a: &str, f: &str) -> Self {
        Self::leaf(GroupKind::Klein, &[a, f])
    }

    pub fn direct_product_with_z(base: GroupSpec, fiber: &str) -> Self {
        GroupSpec {
            kind: GroupKind::DirectProductWithZ(Box::new(base)),
            names: vec![fiber.to_string()],
            factor_name: None,
            offset: 0,
        }
    }

    pub fn free_product(factors: Vec<GroupSpec>) -> Self {
        GroupSpec {
            kind: GroupKind::FreeProduct(factors),
            names: Vec::new(),
            factor_name: None,
            offset: 0,
        }
    }

    /// Attach a name to a free factor, used by sphere splits.
    pub fn named(mut self, name: &str) -> Self {
        self.factor_name = Some(name.to_string());
        self
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn factor_name(&self) -> Option<&str> {
        self.factor_name.as_deref()
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    fn contains_gen(&self, g: usize) -> bool {
        g >= self.offset && g < self.offset + self.ngens()
    }

    pub fn factors(&self) -> Option<&[GroupSpec]> {
        match &self.kind {
            GroupKind::FreeProduct(fs) => Some(fs),
            _ => None,
        }
    }

    fn fiber_index(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::DirectProductWithZ(base) => Some(self.offset + base.ngens()),
            _ => None,
        }
    }

    // Assigns global generator offsets, collects names and flattens nested products.
    fn layout(self, offset: usize) -> Result<GroupSpec> {
        let GroupSpec { kind, names, factor_name, .. } = self;
        match kind {
            GroupKind::DirectProductWithZ(base) => {
                let base = base.layout(offset)?;
                if matches!(base.kind, GroupKind::FreeProduct(_) | GroupKind::DirectProductWithZ(_)) {
                    return Err(Error::Unsupported(
                        "direct product base must be cyclic, free abelian, free or klein".into(),
                    ));
                }
                let mut all = base.names.clone();
                all.extend(names);
                Ok(GroupSpec {
                    kind: GroupKind::DirectProductWithZ(Box::new(base)),
                    names: all,
                    factor_name,
                    offset,
                })
            }
            GroupKind::FreeProduct(factors) => {
                let mut flat = Vec::new();
                flatten(factors, &mut flat);
                let mut laid = Vec::with_capacity(flat.len());
                let mut all = Vec::new();
                let mut next = offset;
                for f in flat {
                    let f = f.layout(next)?;
                    next += f.ngens();
                    all.extend(f.names.iter().cloned());
                    laid.push(f);
                }
                Ok(GroupSpec { kind: GroupKind::FreeProduct(laid), names: all, factor_name, offset })
            }
            kind => Ok(GroupSpec { kind, names, factor_name, offset }),
        }
    }

    fn factor_of(&self, g: usize) -> usize {
        let fs = self.factors().expect("free product");
        fs.iter().position(|f| f.contains_gen(g)).expect("generator belongs to a factor")
    }
}

/// A laid-out group presentation. Cheap to clone.
#[derive(Clone)]
pub struct Group(Arc<GroupSpec>);

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spec(f, &self.0)
    }
}

fn write_spec(f: &mut fmt::Formatter<'_>, s: &GroupSpec) -> fmt::Result {
    if let Some(n) = &s.factor_name {
        write!(f, "{}: ", n)?;
    }
    match &s.kind {
        GroupKind::Cyclic => write!(f, "cyclic({})", s.names[0]),
        GroupKind::FreeAbelian(_) => write!(f, "free_abelian({})", s.names.join(", ")),
        GroupKind::Free(_) => write!(f, "free({})", s.names.join(", ")),
        GroupKind::Klein => write!(f, "klein({}, {})", s.names[0], s.names[1]),
        GroupKind::DirectProductWithZ(base) => {
            write!(f, "direct_z(")?;
            write_spec(f, base)?;
            write!(f, ", {})", s.names.last().unwrap())
        }
        GroupKind::FreeProduct(fs) => {
            write!(f, "free_product(")?;
            for (i, x) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_spec(f, x)?;
            }
            write!(f, ")")
        }
    }
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Group> {
        let spec = spec.layout(0)?;
        let mut seen = std::collections::HashSet::new();
        for n in &spec.names {
            if n.is_empty() || !n.chars().next().unwrap().is_alphabetic() {
                return Err(Error::Domain(format!("invalid generator name `{}`", n)));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Domain(format!("duplicate generator name `{}`", n)));
            }
        }
        if let Some(fs) = spec.factors() {
            let mut names = std::collections::HashSet::new();
            for f in fs {
                if let Some(n) = &f.factor_name {
                    if !names.insert(n.clone()) {
                        return Err(Error::Domain(format!("duplicate factor name `{}`", n)));
                    }
                }
            }
        }
        Ok(Group(Arc::new(spec)))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.0
    }

    pub fn kind(&self) -> &GroupKind {
        &self.0.kind
    }

    pub fn generator_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.0
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn identity(&self) -> Word {
        Word::from_normal(self.clone(), Vec::new())
    }

    pub fn generator(&self, idx: usize) -> Word {
        self.normalize(&[(idx, 1)])
    }

    pub fn generators(&self) -> Vec<Word> {
        (0..self.0.ngens()).map(|i| self.generator(i)).collect()
    }

    pub fn gen(&self, name: &str) -> Result<Word> {
        Ok(self.generator(self.gen_index(name)?))
    }

    /// Normal form of a raw word given as `(generator index, exponent)` letters.
    pub fn normalize(&self, letters: &[(usize, i64)]) -> Word {
        Word::from_normal(self.clone(), normalize(&self.0, letters))
    }

    /// Normal form of a raw word with generators given by name.
    pub fn normalize_word(&self, letters: &[(&str, i64)]) -> Result<Word> {
        let idx = letters
            .iter()
            .map(|(n, e)| Ok((self.gen_index(n)?, *e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normalize(&idx))
    }

    /// TotalOrder comparison of two normal forms.
    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        compare(&self.0, u.syllables(), v.syllables())
    }

    /// Whether the total order is right-invariant (a right-order).
    pub fn is_right_ordered(&self) -> bool {
        matches!(self.0.kind, GroupKind::Cyclic | GroupKind::FreeAbelian(_))
    }

    pub fn is_free_product(&self) -> bool {
        self.0.factors().is_some()
    }

    /// Number of free factors, a non-product group counting as one factor.
    pub fn factor_count(&self) -> usize {
        self.0.factors().map_or(1, |f| f.len())
    }

    pub fn factor_spec(&self, i: usize) -> Option<&GroupSpec> {
        match self.0.factors() {
            Some(fs) => fs.get(i),
            None if i == 0 => Some(&self.0),
            None => None,
        }
    }

    /// Resolve a factor by name, index, or the name of one of its generators.
    pub fn resolve_factor(&self, key: &str) -> Result<usize> {
        let n = self.factor_count();
        if let Some(fs) = self.0.factors() {
            if let Some(i) = fs.iter().position(|f| f.factor_name.as_deref() == Some(key)) {
                return Ok(i);
            }
        }
        if let Ok(i) = key.parse::<usize>() {
            if i < n {
                return Ok(i);
            }
        }
        if let Ok(g) = self.gen_index(key) {
            return Ok(self.factor_of_gen(g));
        }
        Err(Error::InvalidSplit(format!("no free factor `{}`", key)))
    }

    pub fn factor_of_gen(&self, g: usize) -> usize {
        match self.0.factors() {
            Some(_) => self.0.factor_of(g),
            None => 0,
        }
    }

    /// Maximal decomposition into factor syllables; a non-product group is a single factor.
    pub fn factor_syllables(&self, w: &Word) -> Vec<(usize, Word)> {
        if w.is_identity() {
            return Vec::new();
        }
        match self.0.factors() {
            None => vec![(0, w.clone())],
            Some(_) => runs(&self.0, w.syllables())
                .into_iter()
                .map(|(fi, syl)| (fi, Word::from_normal(self.clone(), syl.to_vec())))
                .collect(),
        }
    }

    /// Syllable decomposition of a free-product word.
    pub fn syllables(&self, w: &Word) -> Result<Vec<(usize, Word)>> {
        if !self.is_free_product() {
            return Err(Error::Unsupported("syllables require a free product group".into()));
        }
        if w.group() != self {
            return Err(Error::GroupMismatch);
        }
        Ok(self.factor_syllables(w))
    }

    pub fn centralizer_generators(&self, gamma: &Word) -> Result<Vec<Word>> {
        centralizer::centralizer_generators(self, gamma)
    }

    /// All elements of word length at most `radius`, in TotalOrder.
    pub fn ball(&self, radius: usize) -> Vec<Word> {
        let mut seen: std::collections::HashSet<Word> = std::collections::HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        let steps: Vec<Word> = self
            .generators()
            .into_iter()
            .flat_map(|g| [g.inv(), g])
            .collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for s in &steps {
                    let v = w * s;
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Word> = seen.into_iter().filter(|w| w.len() <= radius).collect();
        out.sort();
        out
    }

    /// Whether the presentation contains the Klein-bundle group.
    pub fn contains_klein(&self) -> bool {
        fn has(s: &GroupSpec) -> bool {
            match &s.kind {
                GroupKind::Klein => true,
                GroupKind::DirectProductWithZ(b) => has(b),
                GroupKind::FreeProduct(fs) => fs.iter().any(has),
                _ => false,
            }
        }
        has(&self.0)
    }
}

fn flatten(factors: Vec<GroupSpec>, out: &mut Vec<GroupSpec>) {
    for f in factors {
        let GroupSpec { kind, names, factor_name, offset } = f;
        match kind {
            GroupKind::FreeProduct(inner) => flatten(inner, out),
            kind => out.push(GroupSpec { kind, names, factor_name, offset }),
        }
    }
}

fn normalize(spec: &GroupSpec, letters: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let off = spec.offset;
    match &spec.kind {
        GroupKind::Cyclic => {
            let n: i64 = letters.iter().map(|l| l.1).sum();
            if n == 0 {
                vec![]
            } else {
                vec![(off, n)]
            }
        }
        GroupKind::FreeAbelian(k) => {
            let mut v = vec![0i64; *k];
            for &(g, e) in letters {
                v[g - off] += e;
            }
            v.iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(i, e)| (off + i, *e))
                .collect()
        }
        GroupKind::Free(_) => {
            let mut out: Vec<(usize, i64)> = Vec::new();
            for &(g, e) in letters {
                if e == 0 {
                    continue;
                }
                match out.last_mut() {
                    Some(top) if top.0 == g => {
                        top.1 += e;
                        if top.1 == 0 {
                            out.pop();
                        }
                    }
                    _ => out.push((g, e)),
                }
            }
            out
        }
        GroupKind::Klein => {
            let (mut n, mut l) = (0i64, 0i64);
            for &(g, e) in letters {
                if g == off {
                    n += e;
                    if e % 2 != 0 {
                        l = -l;
                    }
                } else {
                    l += e;
                }
            }
            let mut out = Vec::new();
            if n != 0 {
                out.push((off, n));
            }
            if l != 0 {
                out.push((off + 1, l));
            }
            out
        }
        GroupKind::DirectProductWithZ(base) => {
            let fib = spec.fiber_index().unwrap();
            let mut fiber = 0;
            let mut rest = Vec::with_capacity(letters.len());
            for &(g, e) in letters {
                if g == fib {
                    fiber += e;
                } else {
                    rest.push((g, e));
                }
            }
            let mut out = normalize(base, &rest);
            if fiber != 0 {
                out.push((fib, fiber));
            }
            out
        }
        GroupKind::FreeProduct(fs) => {
            let mut stack: Vec<(usize, Vec<(usize, i64)>)> = Vec::new();
            for &(g, e) in letters {
                if e == 0 {
                    continue;
                }
                let fi = spec.factor_of(g);
                match stack.last_mut() {
                    Some((top, syl)) if *top == fi => {
                        syl.push((g, e));
                        let merged = normalize(&fs[fi], syl);
                        if merged.is_empty() {
                            stack.pop();
                        } else {
                            *syl = merged;
                        }
                    }
                    _ => {
                        let s = normalize(&fs[fi], &[(g, e)]);
                        if !s.is_empty() {
                            stack.push((fi, s));
                        }
                    }
                }
            }
            stack.into_iter().flat_map(|(_, s)| s).collect()
        }
    }
}

fn runs<'a>(spec: &GroupSpec, syl: &'a [(usize, i64)]) -> Vec<(usize, &'a [(usize, i64)])> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < syl.len() {
        let fi = spec.factor_of(syl[start].0);
        let mut end = start + 1;
        while end < syl.len() && spec.factor_of(syl[end].0) == fi {
            end += 1;
        }
        out.push((fi, &syl[start..end]));
        start = end;
    }
    out
}

fn length(syl: &[(usize, i64)]) -> i64 {
    syl.iter().map(|s| s.1.abs()).sum()
}

// Letter order x^-1 < x < y^-1 < y < ...
fn letters(syl: &[(usize, i64)]) -> impl Iterator<Item = (usize, bool)> + '_ {
    syl.iter()
        .flat_map(|&(g, e)| std::iter::repeat((g, e > 0)).take(e.unsigned_abs() as usize))
}

fn exponent_of(syl: &[(usize, i64)], g: usize) -> i64 {
    syl.iter().find(|s| s.0 == g).map_or(0, |s| s.1)
}

fn compare(spec: &GroupSpec, u: &[(usize, i64)], v: &[(usize, i64)]) -> Ordering {
    let off = spec.offset;
    match &spec.kind {
        GroupKind::Cyclic => exponent_of(u, off).cmp(&exponent_of(v, off)),
        GroupKind::FreeAbelian(k) => (0..*k)
            .map(|i| exponent_of(u, off + i).cmp(&exponent_of(v, off + i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal),
        GroupKind::Free(_) => length(u)
            .cmp(&length(v))
            .then_with(|| letters(u).cmp(letters(v))),
        GroupKind::Klein => (exponent_of(u, off), exponent_of(u, off + 1))
            .cmp(&(exponent_of(v, off), exponent_of(v, off + 1))),
        GroupKind::DirectProductWithZ(base) => {
            let fib = spec.fiber_index().unwrap();
            let split = |w: &[(usize, i64)]| match w.last() {
                Some(&(g, e)) if g == fib => (w.len() - 1, e),
                _ => (w.len(), 0),
            };
            let (nu, fu) = split(u);
            let (nv, fv) = split(v);
            compare(base, &u[..nu], &v[..nv]).then(fu.cmp(&fv))
        }
        GroupKind::FreeProduct(fs) => length(u).cmp(&length(v)).then_with(|| {
            let (ru, rv) = (runs(spec, u), runs(spec, v));
            for ((fa, a), (fb, b)) in ru.iter().zip(rv.iter()) {
                let o = fa.cmp(fb).then_with(|| compare(&fs[*fa], a, b));
                if o.is_ne() {
                    return o;
                }
            }
            ru.len().cmp(&rv.len())
        }),
    }
}
