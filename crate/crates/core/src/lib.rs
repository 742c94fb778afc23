//! Frobenius-splitting invariants of positive-characteristic projective
//! varieties, computed at desk scale.
//!
//! The crate is organised bottom-up:
//!
//! * [`ff`]: prime fields, monomials, sparse polynomials and ranks over `F_p`.
//! * [`splitting`]: graded splitting subspaces `I_e(m)` of hypersurface
//!   section rings, thresholds `m_e`, `α_e`, free ranks and Fano reports.
//! * [`toric`]: exact `α_F` of simplicial toric Fano varieties from a fan.
//! * [`oracle`]: slow, independent reference implementations.
//! * [`frontend`]: parsers, report serialization and the built-in
//!   verification suite used by the `frobw` binary.

pub mod error;
pub mod ff;
pub mod frontend;
pub mod oracle;
pub mod splitting;
pub mod toric;

pub use error::{Error, Result};
pub use ff::{MatrixFp, Monomial, PolynomialFp, PrimeField};
pub use splitting::{GradedHypersurface, SplittingProfile};
pub use toric::{FanData, ToricAlphaReport};

/// Crate version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
