//! Input parsing, report serialization and the verification suite.

pub mod parse;
pub mod report;
pub mod verify;

pub use parse::{parse_e_range, parse_fan, parse_polynomial, parse_polynomial_with_vars, PolySource};
pub use report::{Report, HypersurfaceInput};
