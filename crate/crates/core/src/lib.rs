//! Bohr radii of stable harmonic mappings under the harmonic differential
//! operators `Df = z f_z − z̄ f_z̄` and `𝒟f = z f_z + z̄ f_z̄`.
//!
//! Each radius problem is a gap function `G(r)` on `[0, 1)` built from
//! closed-form weighted geometric series ([`series`]); [`problems`] encodes
//! the nine problems, [`solver`] isolates and certifies the unique root,
//! [`extremal`] evaluates the Koebe and half-plane maps, operators and the
//! area functional, and [`verify`] runs the reference tables and the
//! numerical cross-checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extremal;
pub mod problems;
pub mod series;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use extremal::{ExtremalMap, HarmonicCoefficientMap, OperatorKind};
pub use problems::{
    MappingClass, NonnegPolynomial, OperatorFlavor, Problem, ProblemId, ProblemSpec,
};
pub use series::WeightedGeometricSeries;
pub use solver::{solve, solve_with, Bracket, RootResult, SolverOptions};
