//! Membership in spans of tree relations, exact over the integers with
//! 2-torsion coordinates handled over GF(2).

mod gf2;
mod hermite;
mod quotient;
mod solver;
mod window;

pub use gf2::{solve_gf2, BitRow};
pub use quotient::{quotient_equal, QuotientVerdict};
pub use solver::{
    mod2_system, span_member, span_member_capped, Gf2Row, Gf2System, SpanProblem, SpanVerdict, DEFAULT_DIM_CAP,
};
pub use window::{span_member_windowed, FamilyMember, FixedFamily, RelationFamily, UnionFamily, WindowVerdict};
