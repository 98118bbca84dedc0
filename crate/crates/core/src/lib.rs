//! Order-0 and order-1 intersection invariants of knots and links in
//! 3-manifolds, computed symbolically.
//!
//! The crate canonicalizes elements of the decorated tree groups, generates
//! the INT, Phi and whisker-change indeterminacy families, and decides
//! membership in their span with exact integer and GF(2) linear algebra.

pub mod calculus;
pub mod config;
pub mod error;
pub mod group;
pub mod oracle;
pub mod ring;
pub mod span;
pub mod syntax;
pub mod tree;

pub use error::{Error, Result};
pub use group::{Group, GroupKind, GroupSpec, Word};
pub use ring::RingElem;
pub use tree::{Coset, Edge0, T0Mode, T1Mode, Tree0Elem, Tree1Elem, TreeModule, YTree};
