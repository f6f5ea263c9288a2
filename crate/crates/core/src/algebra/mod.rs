//! Exact arithmetic: rationals, prime fields, polynomials and matrices.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use poly::{monomial_count, monomials_of_degree, poly_arith, Monomial, PolyOp, PolyRing, Polynomial, MAX_VARS};
pub use rational::Rational;
