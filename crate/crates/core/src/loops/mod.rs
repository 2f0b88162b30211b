//! Numerical calculus of smooth nonvanishing functions on oriented circles:
//! sampling, winding numbers, logarithm branches, and the Deligne–Beilinson
//! pairing evaluated by spectrally accurate quadrature.
//!
//! Geometry stays exact: whether a divisor point lies on or strictly inside
//! a circle is decided over ℚ. Only function values are floating point.

use thiserror::Error;

use crate::exact::GaussianRational;

pub mod branch;
pub mod circle;
mod fft;
pub mod pairing;
pub mod sampled;

pub use branch::{log_continuation, winding_number, LogBranch};
pub use circle::{Orientation, OrientedCircle};
pub use pairing::{
    deligne_pairing, deligne_pairing_at_base, dlog_exact, dlog_spectral, enclosed_valuation_sum,
    pairing_oracle,
};
pub use sampled::SampledLoop;

/// Default sample count for pairing quadrature.
pub const DEFAULT_SAMPLES: usize = 4096;
/// Default numeric tolerance for reciprocity defects.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Adjacent samples must stay within `π − ADJACENCY_MARGIN` in argument.
pub const ADJACENCY_MARGIN: f64 = 1e-3;
/// Winding sums farther than this from an integer are rejected.
pub const WINDING_DEFECT_LIMIT: f64 = 0.25;

#[derive(Clone, PartialEq, Debug, Error)]
pub enum LoopError {
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("sample count {n} is not a power of two >= 16")]
    BadSampleCount { n: usize },
    #[error("divisor point {point} on contour")]
    DivisorOnContour { point: GaussianRational },
    #[error("sample {index} is zero; loops must avoid the origin")]
    ZeroSample { index: usize },
    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("under-sampled loop: argument jump {jump:.4} rad between samples {index} and {index}+1")]
    UnderSampled { index: usize, jump: f64 },
    #[error("ambiguous winding: defect {defect:.4} from the nearest integer")]
    AmbiguousWinding { defect: f64 },
    #[error("mismatched grids: loops must share the same circle and sample count")]
    MismatchedGrids,
    #[error("base index {base} out of range for {n} samples")]
    BadBaseIndex { base: usize, n: usize },
}

pub(crate) fn check_sample_count(n: usize) -> Result<(), LoopError> {
    if n >= 16 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(LoopError::BadSampleCount { n })
    }
}
