//! Exact search for polynomial Casimir operators of finite-dimensional Lie
//! algebras.
//!
//! A candidate invariant is written as an undetermined combination of PBW
//! monomials, pushed through a realisation of the algebra by first-order
//! differential operators, and the coefficients are fixed by demanding that
//! the resulting operator commute with every generator. A grading of the
//! algebra splits the ansatz into independent weight classes. All arithmetic
//! is over exact rationals.

pub mod algebra;
pub mod algebra_file;
pub mod cli;
pub mod enveloping;
pub mod error;
pub mod expr;
pub mod families;
pub mod grading;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod search;
pub mod weyl;

pub use algebra::{AlgebraElement, LieAlgebra, LieAlgebraBuilder};
pub use enveloping::{PbwMonomial, Uea, UeaElement};
pub use error::{Error, Result};
pub use rational::Rational;
pub use weyl::{DifferentialOperator, Realization};
