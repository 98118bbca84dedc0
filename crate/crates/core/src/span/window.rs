use super::solver::{span_member_capped, SpanProblem, SpanVerdict};
use crate::error::Result;
use crate::tree::{Tree1Elem, TreeModule};

/// A named relation.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub id: String,
    pub element: Tree1Elem,
}

/// An infinite relation family presented through finite windows of growing radius.
pub trait RelationFamily {
    fn window(&self, radius: usize) -> Result<Vec<FamilyMember>>;
}

/// A finite family, identical in every window.
#[derive(Debug, Clone)]
pub struct FixedFamily(pub Vec<FamilyMember>);

impl RelationFamily for FixedFamily {
    fn window(&self, _radius: usize) -> Result<Vec<FamilyMember>> {
        Ok(self.0.clone())
    }
}

/// Union of families, windowed together.
pub struct UnionFamily<'a>(pub Vec<&'a dyn RelationFamily>);

impl RelationFamily for UnionFamily<'_> {
    fn window(&self, radius: usize) -> Result<Vec<FamilyMember>> {
        let mut out = Vec::new();
        for f in &self.0 {
            out.extend(f.window(radius)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WindowVerdict {
    /// A proof of membership found in the window of this radius.
    Witness { radius: usize, coefficients: Vec<(String, i64)> },
    /// No combination found in any window up to this radius. A bound, not a
    /// proof of nonmembership.
    NoWitnessUpTo(usize),
}

/// Solves the window problems for `R = 0, 1, ..., r_max` in turn.
pub fn span_member_windowed(
    target: &Tree1Elem,
    family: &dyn RelationFamily,
    r_max: usize,
    cap: usize,
) -> Result<WindowVerdict> {
    for r in 0..=r_max {
        if let Some(w) = solve_window(target, family, r, cap)? {
            return Ok(w);
        }
    }
    Ok(WindowVerdict::NoWitnessUpTo(r_max))
}

pub(crate) fn solve_window(
    target: &Tree1Elem,
    family: &dyn RelationFamily,
    radius: usize,
    cap: usize,
) -> Result<Option<WindowVerdict>> {
    if target.is_zero() {
        return Ok(Some(WindowVerdict::Witness { radius, coefficients: Vec::new() }));
    }
    let members = family.window(radius)?;
    let gens: Vec<Tree1Elem> = members.iter().map(|m| m.element.clone()).collect();
    let problem = SpanProblem::new(target.clone(), gens)?;
    match span_member_capped(&problem, cap)? {
        SpanVerdict::Witness(d) => {
            let coefficients = members
                .into_iter()
                .zip(d)
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (m.id, c))
                .collect();
            Ok(Some(WindowVerdict::Witness { radius, coefficients }))
        }
        SpanVerdict::Infeasible => Ok(None),
    }
}

