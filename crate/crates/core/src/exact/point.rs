//! Points on the Riemann sphere: Gaussian rationals plus the point at infinity.

use std::fmt;

use super::gaussian::GaussianRational;

/// A point of the Riemann sphere with exact coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpherePoint {
    Finite(GaussianRational),
    Infinity,
}

impl SpherePoint {
    pub fn finite(value: GaussianRational) -> Self {
        SpherePoint::Finite(value)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&GaussianRational> {
        match self {
            SpherePoint::Finite(value) => Some(value),
            SpherePoint::Infinity => None,
        }
    }
}

impl From<GaussianRational> for SpherePoint {
    fn from(value: GaussianRational) -> Self {
        SpherePoint::Finite(value)
    }
}

impl From<i64> for SpherePoint {
    fn from(n: i64) -> Self {
        SpherePoint::Finite(GaussianRational::integer(n))
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(value) => write!(f, "{}", value),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
