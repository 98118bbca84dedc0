//! Invariant formulas: sphere maps, pairings, indeterminacy families,
//! stabilizers, composition and clasp-move deltas.

mod clasp;
mod compose;
mod families;
mod int;
mod pairing;
mod sigma;
mod stabilizer;

pub use clasp::{clasp_move_delta, ClaspMove};
pub use compose::{compose_invariants, ConcordancePart};
pub use families::{EssentialIntFamily, IntFamily, PhiFamily};
pub use int::{int_relations_essential, int_relations_null};
pub use pairing::{pairing_crossings, pairing_tau1_link_sphere, phi_generator, phi_generators};
pub use sigma::{sigma, sigma_nonseparating, sigma_of, sigma_separating, Sigma, SigmaTerm};
pub use stabilizer::{
    klein_twisted_form_check, stabilizer_candidates, stabilizer_classify, twisting_possible,
    ConjugationOrbit, StabilizerVerdict,
};

use crate::error::{Error, Result};
use crate::group::{Group, GroupKind, Word};
use crate::ring::RingElem;
use crate::tree::{Coset, T0Mode, Tree0Elem};

/// A tau_0 value `z` in normal form, standing in for the clasp link `L_z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkClass {
    z: Tree0Elem,
}

impl LinkClass {
    pub fn new(z: Tree0Elem) -> Result<LinkClass> {
        if *z.mode() != T0Mode::Plain {
            return Err(Error::Domain("link classes use plain decorations".into()));
        }
        Ok(LinkClass { z })
    }

    /// A knot with self-intersection value `sum c_g (g)_11`.
    pub fn knot(r: &RingElem) -> Result<LinkClass> {
        LinkClass::new(Tree0Elem::from_knot_ring(r, T0Mode::Plain)?)
    }

    pub fn z(&self) -> &Tree0Elem {
        &self.z
    }

    pub fn m(&self) -> usize {
        self.z.m()
    }

    pub fn group(&self) -> &Group {
        self.z.group()
    }

    /// `z_ij` read from `i` to `j`.
    pub fn block(&self, i: usize, j: usize) -> Vec<(Word, i64)> {
        self.z.block(i, j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SphereKind {
    /// Separating sphere; the listed factors form `M'`, the rest `M''`.
    Separating { mprime: Vec<usize> },
    /// Non-separating sphere dual to the cyclic factor with this index.
    NonSeparating { factor: usize },
}

/// A prime-decomposition sphere, optionally whiskered by `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereSpec {
    group: Group,
    kind: SphereKind,
    whisker: Word,
}

impl SphereSpec {
    pub fn separating(group: &Group, mprime: &[usize]) -> Result<SphereSpec> {
        let n = group.factor_count();
        if !group.is_free_product() {
            return Err(Error::InvalidSplit("separating spheres need a free product".into()));
        }
        let mut v = mprime.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != mprime.len() || v.iter().any(|&i| i >= n) {
            return Err(Error::InvalidSplit("factor indices must be distinct and in range".into()));
        }
        if v.is_empty() || v.len() == n {
            return Err(Error::InvalidSplit("both sides of the split must be nonempty".into()));
        }
        Ok(SphereSpec { group: group.clone(), kind: SphereKind::Separating { mprime: v }, whisker: group.identity() })
    }

    pub fn nonseparating(group: &Group, factor: usize) -> Result<SphereSpec> {
        match group.factor_spec(factor).map(|s| s.kind()) {
            Some(GroupKind::Cyclic) => Ok(SphereSpec {
                group: group.clone(),
                kind: SphereKind::NonSeparating { factor },
                whisker: group.identity(),
            }),
            _ => Err(Error::InvalidSplit(format!("factor {} is not a cyclic free factor", factor))),
        }
    }

    pub fn with_whisker(mut self, a: Word) -> SphereSpec {
        self.whisker = a;
        self
    }

    pub fn kind(&self) -> &SphereKind {
        &self.kind
    }

    pub fn whisker(&self) -> &Word {
        &self.whisker
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
}

/// A knot in the essential free homotopy class `gamma` of an `F x S^1` group.
#[derive(Debug, Clone)]
pub struct EssentialKnotClass {
    gamma: Word,
    z: Tree0Elem,
}

impl EssentialKnotClass {
    pub fn new(gamma: Word, z: Tree0Elem) -> Result<EssentialKnotClass> {
        if !matches!(gamma.group().kind(), GroupKind::DirectProductWithZ(_)) {
            return Err(Error::Unsupported("essential knots need an F x S^1 group".into()));
        }
        match z.mode() {
            T0Mode::DoubleCoset(c) if c.gamma() == &gamma && z.m() == 1 => {}
            _ => return Err(Error::Domain("z must be a knot value decorated by double cosets of gamma".into())),
        }
        Ok(EssentialKnotClass { gamma, z })
    }

    /// Builds `z = sum c_g (g)_11` in double-coset mode from a ring element.
    pub fn from_ring(gamma: Word, r: &RingElem) -> Result<EssentialKnotClass> {
        let z = Tree0Elem::from_knot_ring(r, T0Mode::DoubleCoset(Coset::new(gamma.clone())?))?;
        EssentialKnotClass::new(gamma, z)
    }

    pub fn gamma(&self) -> &Word {
        &self.gamma
    }

    pub fn z(&self) -> &Tree0Elem {
        &self.z
    }

    pub fn coset(&self) -> &Coset {
        self.z.mode().coset().unwrap()
    }
}
