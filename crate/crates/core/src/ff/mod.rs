//! Arithmetic kernel over prime fields.
//!
//! Everything above this module reduces to three primitives: modular
//! arithmetic in [`PrimeField`], graded-colex indexing of [`Monomial`]s,
//! and ranks of sparse [`MatrixFp`]s. Polynomial products normalise to
//! sorted term vectors so outputs are deterministic.

mod field;
mod matrix;
pub(crate) mod monomial;
mod poly;

pub use field::PrimeField;
pub use matrix::{rank_mod_p, MatrixFp};
pub(crate) use monomial::bounded_monomials;
pub use monomial::{binomial, monomial_count, monomials_of_degree, Monomial};
pub use poly::{digit_power, PolynomialFp, DEFAULT_TERM_CAP};
