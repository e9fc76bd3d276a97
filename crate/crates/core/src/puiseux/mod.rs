//! Truncated Puiseux series over the rationals, their valuation, and the
//! passage from Puiseux polynomials to tropical polynomials.

pub mod polynomial;
pub mod series;

use thiserror::Error;

pub use polynomial::{kapranov_check, root_status, val_map, KapranovReport, PuiseuxPoint, PuiseuxPolynomial, RootStatus};
pub use series::{PuiseuxSeries, DEFAULT_TRUNCATION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuiseuxError {
    #[error("valuation undefined at this truncation")]
    ValuationUndefined,
    #[error("inverse of a series that is zero up to truncation")]
    InverseOfZero,
    #[error("point coordinates must be nonzero")]
    ZeroCoordinate,
    #[error("polynomial has no terms")]
    EmptyPolynomial,
}
