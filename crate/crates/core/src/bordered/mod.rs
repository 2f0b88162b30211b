//! Bordered planar domains and the reciprocity checks on them: induced
//! boundary orientations, admissibility, the boundary-product identity, and
//! parameterized family sweeps.

use thiserror::Error;

use crate::exact::GaussianRational;
use crate::loops::LoopError;

pub mod check;
pub mod domain;
pub mod family;

pub use check::{deligne_check, tame_circle_oracle, CircleReport, ReciprocityReport};
pub use domain::{BorderedDomain, PointLocation};
pub use family::{
    family_sweep, parse_affine_rational, parse_affine_scalar, parse_scheduled, sweep_csv,
    sweep_passes, AffineRational, AffineScalar, FamilySpec, FiberError, FiberReport,
    ScheduledCircle, ScheduledDomain, ScheduledFunction,
};

/// Violations of the exact domain invariants.
#[derive(Clone, PartialEq, Debug, Error)]
pub enum DomainError {
    #[error("hole {index} is not strictly inside the outer circle")]
    HoleNotInsideOuter { index: usize },
    #[error("holes {first} and {second} have overlapping or tangent closed disks")]
    HolesOverlap { first: usize, second: usize },
    #[error(transparent)]
    Circle(#[from] LoopError),
}

/// Why a function fails to be admissible on a domain.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AdmissibilityError {
    #[error("inadmissible: divisor point {point} inside domain body")]
    InBody { point: GaussianRational },
    #[error("inadmissible: divisor point {point} on boundary circle {circle}")]
    OnContour {
        point: GaussianRational,
        circle: usize,
    },
}

/// Errors raised while running a reciprocity check.
#[derive(Clone, PartialEq, Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Inadmissible(#[from] AdmissibilityError),
    #[error(transparent)]
    Loop(#[from] LoopError),
}
