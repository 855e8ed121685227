//! Congruence lattices of path semigroups of finite acyclic quivers, the
//! matching lattice of relation-generated ideals of the path algebra, and
//! checks of their lattice-theoretic properties.

pub mod error;
pub mod harness;
pub mod ideals;
pub mod lattice;
pub mod linalg;
pub mod quiver;
pub mod semigroup;

pub use error::{Error, Result};
pub use ideals::{all_relations, PathAlgebra, Relation, SpecialIdeal};
pub use lattice::{FiniteLattice, LatticeProperties};
pub use linalg::{membership, row_reduce, subspace_intersection, subspace_sum, PathVector, Subspace};
pub use quiver::{parse_quiver, Path, Quiver};
pub use semigroup::{Congruence, PathSemigroup, SemigroupElement, DEFAULT_MAX_ELEMENTS};
