//! Exact decision engine for invariant linear connections on nilpotent
//! adjoint orbits of simple Lie algebras.
//!
//! The pipeline is
//! [`build_algebra`] → [`OrbitContext`] → [`assemble`] → [`solve_connection_space`]
//! → [`run_checks`], all over exact rationals. [`run_theorem`] sweeps the
//! orbit catalog and compares against the classification: only the
//! highest-root orbits of type `C` (with `A1 = C1`, `B2 ≅ C2`) carry an
//! invariant connection.

pub mod connection;
pub mod error;
pub mod flatness;
pub mod lie;
pub mod linalg;
pub mod orbits;
pub mod report;

pub use connection::{
    assemble, average_equivalence_check, covariant_derivative, solve_connection_space, solve_orbit, Condition,
    ConditionSet, ConnectionSpace, ConstraintSystem, GammaTensor, RowTag, SolveOutcome, UnknownLayout,
};
pub use error::{Error, Result};
pub use flatness::{
    check_hrep, curvature, identify_representation, is_representation, is_transitive, lemma4_triple, run_checks,
    torsion, CheckReport, EndoTriple, WeightEntry,
};
pub use lie::{build_algebra, AlgebraId, BasisKind, LieAlgebraData, LieElement, RootSystem, TypeLetter};
pub use linalg::{AffineOutcome, AffineSolution, Certificate, DenseMatrix, MatrixQ, Scalar};
pub use orbits::{CosetVector, OrbitContext, OrbitKind, OrbitSpec, Sl2Triple};
pub use report::{analyze, run_theorem, AnalysisReport, TheoremRow, TheoremTable};
