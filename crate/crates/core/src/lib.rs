//! Symbolic-numeric toolkit for reciprocity identities of rational functions
//! on the Riemann sphere and on planar bordered domains.
//!
//! Three layers:
//!
//! - [`exact`] — Gaussian-rational arithmetic, factored rational functions
//!   with their divisors, tame symbols, residues, and the Weil and
//!   residue-theorem verifiers. Everything here is exact.
//! - [`loops`] — sampled nonvanishing functions on oriented circles: winding
//!   numbers, logarithm branches, and the Deligne–Beilinson pairing
//!   `T(f,g) = exp((1/2πi)∫ log f · dg/g)·g(x₀)^{−ν(f)}` by spectrally
//!   accurate quadrature, together with its exact tame-symbol oracle.
//! - [`bordered`] — multiply connected planar domains with induced boundary
//!   orientations, the boundary-product reciprocity check `∏ T = 1`, and
//!   parameterized family sweeps over a rational grid.
//!
//! Geometry decisions (containment, on-contour, disjointness) are always
//! made exactly over ℚ; floating point enters only through sampled function
//! values and quadrature.

// error types carry exact scalars and only exist on cold paths
#![allow(clippy::result_large_err)]

pub mod bordered;
pub mod exact;
pub mod loops;
pub mod testkit;

pub use bordered::{BorderedDomain, FamilySpec, ReciprocityReport};
pub use exact::{Divisor, FactoredRational, GaussianRational, SpherePoint};
pub use loops::{Orientation, OrientedCircle, SampledLoop};

pub use num_complex::Complex64;
pub use num_rational::BigRational;
