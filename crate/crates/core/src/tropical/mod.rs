//! The max-plus semiring and tropical polynomials in two variables.

pub mod number;
pub mod parser;
pub mod polynomial;

use thiserror::Error;

pub use number::TropicalNumber;
pub use parser::{parse, ParseError};
pub use polynomial::{exponent_vec, Exponent, LiftedHull, TropicalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("a tropical polynomial needs at least one term")]
    Empty,
}
