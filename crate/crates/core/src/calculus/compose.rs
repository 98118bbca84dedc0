use crate::error::{Error, Result};
use crate::group::Word;
use crate::tree::TreeModule;

/// An invariant value together with its latitude, optionally reversed.
#[derive(Debug, Clone)]
pub enum ConcordancePart<T> {
    Forward { tau: T, latitude: Vec<Word> },
    /// The reversed concordance: `tau(-A) = -psi^-1 . tau(A)`, latitude `psi^-1`.
    Inverse { tau: T, latitude: Vec<Word> },
}

impl<T: TreeModule> ConcordancePart<T> {
    fn resolve(self) -> Result<(T, Vec<Word>)> {
        match self {
            ConcordancePart::Forward { tau, latitude } => Ok((tau, latitude)),
            ConcordancePart::Inverse { tau, latitude } => {
                let inv: Vec<Word> = latitude.iter().map(Word::inv).collect();
                Ok((tau.psi_action(&inv)?.negated(), inv))
            }
        }
    }
}

/// Left-to-right fold of `tau(A + B) = tau(A) + psi_A . tau(B)` with latitudes multiplied.
pub fn compose_invariants<T: TreeModule>(parts: Vec<ConcordancePart<T>>) -> Result<(T, Vec<Word>)> {
    let mut iter = parts.into_iter();
    let first = iter.next().ok_or_else(|| Error::Domain("nothing to compose".into()))?;
    let (mut tau, mut lat) = first.resolve()?;
    if lat.len() != tau.label_count() {
        return Err(Error::LengthMismatch { expected: tau.label_count(), got: lat.len() });
    }
    for p in iter {
        let (t, l) = p.resolve()?;
        if l.len() != lat.len() {
            return Err(Error::LengthMismatch { expected: lat.len(), got: l.len() });
        }
        tau = tau.try_add(&t.psi_action(&lat)?)?;
        lat = lat.iter().zip(&l).map(|(a, b)| a * b).collect();
    }
    Ok((tau, lat))
}
