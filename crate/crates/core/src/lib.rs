//! Exact Dunkl-operator calculus on hypercomplex subspaces of real alternative *-algebras.

pub mod acceptance;
pub mod algebra;
pub mod document;
pub mod index_set;
pub mod operators;
pub mod partition;
pub mod pointcheck;
pub mod polynomial;
pub mod samples;
pub mod scalar;
pub mod spaces;
pub mod spectral;

pub use algebra::{make_algebra, AlgebraError, AlgebraSpec, AlgebraTable, Element, Frame};
pub use index_set::IndexSet;
pub use scalar::Rational;
