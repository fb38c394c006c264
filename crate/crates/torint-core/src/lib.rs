//! Exact intersection theory of torsion-translated algebraic subgroups of
//! abelian complex reductive groups.
//!
//! Every question about an abelian reductive group `T = Hom(H, C*)` is pushed
//! through the order-reversing dictionary between algebraic subgroups of `T`
//! and subgroups of the finitely generated abelian group `H`, and answered by
//! integer lattice arithmetic: Hermite and Smith normal forms, saturations,
//! determinant groups and congruence solving. All arithmetic is
//! arbitrary-precision; nothing is ever rounded.

pub mod duality;
pub mod error;
pub mod intersect;
pub mod lattice;
pub mod matrix;
pub mod point;

pub use duality::{epsilon_of, prop_xi_pair, AlgSubgroupDescriptor, FgAbGroup, Subgroup};
pub use error::{Error, Result};
pub use intersect::{
    dimtori_construct, exp_intersect, exp_subtorus, intersect_many, intersect_two,
    intersect_two_via_thm6, intersect_unions, is_finite_intersection, thm6_with_lifts,
    virtually_belongs, CongruenceSystem, IntersectionResult, OrderBounds, ThmSixCheck,
    ThmSixOutcome, TranslatedSubgroup, VirtualMembership,
};
pub use lattice::{FiniteAbelianGroup, Lattice};
pub use matrix::{IntMatrix, SnfResult};
pub use point::{Rational, TorsionPoint};
