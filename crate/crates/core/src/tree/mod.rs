//! Decorated tree groups of order 0 and order 1.

mod coset;
mod order0;
mod order1;

pub use coset::{Coset, DEFAULT_WINDOW_EXTRA};
pub use order0::{canonicalize_edge, Edge0, Tree0Elem};
pub use order1::{canonicalize_y, right_order_normal_forms, Term1, Tree1Elem, YCanon, YTree};

use crate::error::{Error, Result};
use crate::group::Word;

/// Decoration mode of order-0 trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum T0Mode {
    Plain,
    /// Decorations in the double coset space `<gamma> \ G / <gamma>`.
    DoubleCoset(Coset),
}

/// Decoration mode of order-1 trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum T1Mode {
    Plain,
    /// Decorations in the left coset space `<gamma> \ G`.
    LeftCoset(Coset),
}

impl T0Mode {
    pub fn coset(&self) -> Option<&Coset> {
        match self {
            T0Mode::Plain => None,
            T0Mode::DoubleCoset(c) => Some(c),
        }
    }
}

impl T1Mode {
    pub fn coset(&self) -> Option<&Coset> {
        match self {
            T1Mode::Plain => None,
            T1Mode::LeftCoset(c) => Some(c),
        }
    }
}

/// Abelian groups of trees carrying the whisker-change action.
pub trait TreeModule: Clone + PartialEq + std::fmt::Display {
    fn zero_like(&self) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn negated(&self) -> Self;
    fn psi_action(&self, psi: &[Word]) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn label_count(&self) -> usize;
}

pub(crate) fn check_psi(psi: &[Word], m: usize, coset: Option<&Coset>) -> Result<()> {
    if psi.len() != m {
        return Err(Error::LengthMismatch { expected: m, got: psi.len() });
    }
    if let Some(c) = coset {
        for p in psi {
            if !p.commutes_with(c.gamma()) {
                return Err(Error::Domain(format!(
                    "whisker change {} does not centralize {}",
                    p,
                    c.gamma()
                )));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_label(label: usize, m: usize) -> Result<()> {
    if label == 0 || label > m {
        return Err(Error::LabelOutOfRange { label, max: m });
    }
    Ok(())
}
