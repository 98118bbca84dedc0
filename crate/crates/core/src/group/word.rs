use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use super::Group;
use crate::error::{Error, Result};

/// A group element in normal form.
#[derive(Clone)]
pub struct Word {
    group: Group,
    syl: Vec<(usize, i64)>,
}

impl Word {
    pub(crate) fn from_normal(group: Group, syl: Vec<(usize, i64)>) -> Word {
        Word { group, syl }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// `(generator index, exponent)` pairs of the normal form.
    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syl
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// Number of generator letters.
    pub fn len(&self) -> usize {
        self.syl.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    /// Exponent of a generator in the normal form, summed over its syllables.
    pub fn exponent_of(&self, gen: usize) -> i64 {
        self.syl.iter().filter(|s| s.0 == gen).map(|s| s.1).sum()
    }

    pub fn inv(&self) -> Word {
        let raw: Vec<_> = self.syl.iter().rev().map(|&(g, e)| (g, -e)).collect();
        self.group.normalize(&raw)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.group.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Conjugate `p * self * p^-1`.
    pub fn conj(&self, p: &Word) -> Word {
        &(p * self) * &p.inv()
    }

    pub fn commutes_with(&self, other: &Word) -> bool {
        &(self * other) == &(other * self)
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syl == other.syl
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.syl.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.compare(self, other)
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        debug_assert!(self.group == rhs.group, "words from different groups");
        let mut raw = self.syl.clone();
        raw.extend_from_slice(&rhs.syl);
        self.group.normalize(&raw)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return write!(f, "1");
        }
        let names = self.group.generator_names();
        for (i, &(g, e)) in self.syl.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{}", names[g])?;
            } else {
                write!(f, "{}^{}", names[g], e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

pub fn multiply(u: &Word, v: &Word) -> Result<Word> {
    if u.group != v.group {
        return Err(Error::GroupMismatch);
    }
    Ok(u * v)
}

pub fn invert(u: &Word) -> Word {
    u.inv()
}
