//! Exact computer algebra for finite-dimensional color Lie algebras.
//!
//! Coefficients live in a cyclotomic field `Q(ζ_m)`; gradings are by finitely
//! generated abelian groups with an antisymmetric bicharacter `ε`. On top of
//! that the crate provides axiom verification, graded Chevalley–Eilenberg and
//! Hochschild differentials, PBW normal forms in `U(g)`, truncated formal
//! deformations, and the color Poisson structure and star product on
//! `gr U(g)`.

pub mod algebra;
pub mod cli;
pub mod cochain;
pub mod definition;
pub mod deformation;
pub mod enveloping;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod grading;
pub mod hochschild;
pub mod lincomb;
pub mod poisson;
pub mod linalg;
pub mod report;
pub mod representation;
pub mod scalar;

pub use algebra::{ColorLieAlgebra, GradedVector};
pub use error::{Error, Result};
pub use grading::{Bicharacter, GradingGroup, GroupElement};
pub use report::VerificationReport;
pub use scalar::Scalar;
