use crate::error::{Error, Result};
use crate::group::Word;

/// Canonical representatives of cosets of a cyclic subgroup `<gamma>`.
///
/// Representatives minimise `(length, TotalOrder)` over translates whose
/// exponents lie in a window of radius `len + extra`. A minimum found only on
/// the window boundary is reported as an error rather than trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    gamma: Word,
    extra: i64,
}

pub const DEFAULT_WINDOW_EXTRA: usize = 4;

impl Coset {
    pub fn new(gamma: Word) -> Result<Coset> {
        Coset::with_window(gamma, DEFAULT_WINDOW_EXTRA)
    }

    pub fn with_window(gamma: Word, extra: usize) -> Result<Coset> {
        if gamma.is_identity() {
            return Err(Error::Domain("coset generator must be nontrivial".into()));
        }
        Ok(Coset { gamma, extra: extra as i64 })
    }

    pub fn gamma(&self) -> &Word {
        &self.gamma
    }

    pub fn window_extra(&self) -> usize {
        self.extra as usize
    }

    fn radius(&self, len: usize) -> i64 {
        len as i64 + self.extra
    }

    /// Representative of `<gamma> w`.
    pub fn left_rep(&self, w: &Word) -> Result<Word> {
        let r = self.radius(w.len());
        let g = &self.gamma;
        let mut cur = &g.pow(-r) * w;
        let mut best = Best::default();
        for p in -r..=r {
            best.offer((cur.len(), cur.clone()), p.abs() < r);
            cur = g * &cur;
        }
        best.finish(w, r).map(|k| k.1)
    }

    /// Representative of `<gamma> w <gamma>`.
    pub fn double_rep(&self, w: &Word) -> Result<Word> {
        let r = self.radius(w.len());
        let g = &self.gamma;
        let right = g.pow(-r);
        let mut left = &g.pow(-r) * w;
        let mut best = Best::default();
        for p in -r..=r {
            let mut cur = &left * &right;
            for q in -r..=r {
                best.offer((cur.len(), cur.clone()), p.abs() < r && q.abs() < r);
                cur = &cur * g;
            }
            left = g * &left;
        }
        best.finish(w, r).map(|k| k.1)
    }

    /// Representative of the pair `(u, v)` modulo independent left
    /// translations and a common right translation by powers of gamma.
    pub fn pair_rep(&self, u: &Word, v: &Word) -> Result<(Word, Word)> {
        let r = self.radius(u.len() + v.len());
        let g = &self.gamma;
        let gr = g.pow(-r);
        let (mut uq, mut vq) = (u * &gr, v * &gr);
        let mut best = Best::default();
        for q in -r..=r {
            let a = self.left_rep(&uq)?;
            let b = self.left_rep(&vq)?;
            best.offer((a.len() + b.len(), a, b), q.abs() < r);
            uq = &uq * g;
            vq = &vq * g;
        }
        let w = u * v;
        best.finish(&w, r).map(|k| (k.1, k.2))
    }
}

struct Best<K> {
    key: Option<K>,
    interior: bool,
}

impl<K> Default for Best<K> {
    fn default() -> Self {
        Best { key: None, interior: false }
    }
}

impl<K: Ord> Best<K> {
    fn offer(&mut self, k: K, interior: bool) {
        match &self.key {
            Some(b) if k > *b => {}
            Some(b) if k == *b => self.interior |= interior,
            _ => {
                self.key = Some(k);
                self.interior = interior;
            }
        }
    }

    fn finish(self, w: &Word, r: i64) -> Result<K> {
        match self.key {
            Some(k) if self.interior => Ok(k),
            _ => Err(Error::WindowExhausted { word: w.to_string(), radius: r }),
        }
    }
}
