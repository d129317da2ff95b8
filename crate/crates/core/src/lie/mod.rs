//! Simple Lie algebras in a Chevalley basis.

mod algebra;
mod reps;
mod roots;

pub use algebra::{build_algebra, BasisKind, LieAlgebraData, LieElement};
pub use roots::{AlgebraId, RootSystem, TypeLetter, MAX_RANK};
