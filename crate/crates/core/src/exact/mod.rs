//! Exact arithmetic layer: Gaussian rationals, factored rational functions,
//! divisors, tame symbols, residues, and the expression parser.
//!
//! Everything here is computed over ℚ(i); there is no floating point and no
//! tolerance anywhere in this module. The numerical layer in [`crate::loops`]
//! consumes these values when it needs to sample a function on a contour.

use thiserror::Error;

pub mod divisor;
pub mod factored;
pub mod gaussian;
pub mod parser;
pub mod point;
pub mod residue;
mod series;
pub mod tame;

pub use divisor::Divisor;
pub use factored::FactoredRational;
pub use gaussian::{rational_to_f64, GaussianRational};
pub use parser::{parse_rational, parse_scalar, parse_signed_rational, ParseError};
pub use point::SpherePoint;
pub use residue::{residue, residue_sum_check};
pub use tame::{tame_symbol, weil_product};

/// Errors from exact-value construction and evaluation.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ExactError {
    /// A factored rational must have a nonzero unit.
    #[error("zero unit in factored rational")]
    ZeroUnit,
    /// `eval` requires valuation zero at the point.
    #[error("pole or zero at evaluation point {0}")]
    PoleOrZeroAtEval(GaussianRational),
}
