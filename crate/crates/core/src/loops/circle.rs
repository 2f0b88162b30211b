//! Oriented circles with exact centers and radii.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::exact::{rational_to_f64, GaussianRational};

use super::LoopError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }

    pub fn is_ccw(self) -> bool {
        matches!(self, Orientation::Ccw)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Ccw => write!(f, "ccw"),
            Orientation::Cw => write!(f, "cw"),
        }
    }
}

/// A circle in the plane with exact rational center and radius and a fixed
/// orientation. The counterclockwise parametrization is
/// `z(θ) = center + radius·e^{iθ}`; the clockwise one traverses the same
/// path with θ decreasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedCircle {
    center: GaussianRational,
    radius: BigRational,
    orientation: Orientation,
}

impl OrientedCircle {
    pub fn new(
        center: GaussianRational,
        radius: BigRational,
        orientation: Orientation,
    ) -> Result<Self, LoopError> {
        if !radius.is_positive() {
            return Err(LoopError::NonPositiveRadius);
        }
        Ok(Self {
            center,
            radius,
            orientation,
        })
    }

    pub fn ccw(center: GaussianRational, radius: BigRational) -> Result<Self, LoopError> {
        Self::new(center, radius, Orientation::Ccw)
    }

    pub fn center(&self) -> &GaussianRational {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn reversed(&self) -> Self {
        Self {
            center: self.center.clone(),
            radius: self.radius.clone(),
            orientation: self.orientation.reversed(),
        }
    }

    pub fn radius_sqr(&self) -> BigRational {
        &self.radius * &self.radius
    }

    /// Sample point at parameter `θ_k = 2πk/n` along the positive direction
    /// of this circle's orientation.
    pub fn sample_point(&self, k: usize, n: usize) -> Complex64 {
        let theta = TAU * (k as f64) / (n as f64);
        let angle = match self.orientation {
            Orientation::Ccw => theta,
            Orientation::Cw => -theta,
        };
        self.center.to_complex() + Complex64::from_polar(rational_to_f64(&self.radius), angle)
    }

    /// Exact strict containment: `|p − center|² < radius²` over ℚ.
    pub fn strictly_contains(&self, point: &GaussianRational) -> bool {
        (point - &self.center).norm_sqr() < self.radius_sqr()
    }

    /// Exact test for `p` lying on the circle itself.
    pub fn on_circle(&self, point: &GaussianRational) -> bool {
        (point - &self.center).norm_sqr() == self.radius_sqr()
    }

    /// Exact strict exteriority.
    pub fn strictly_outside(&self, point: &GaussianRational) -> bool {
        (point - &self.center).norm_sqr() > self.radius_sqr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_nonpositive_radius() {
        assert!(OrientedCircle::ccw(GaussianRational::zero(), rat(0, 1)).is_err());
        assert!(OrientedCircle::ccw(GaussianRational::zero(), rat(-1, 2)).is_err());
    }

    #[test]
    fn exact_containment() {
        let circle = OrientedCircle::ccw(GaussianRational::zero(), rat(1, 1)).unwrap();
        assert!(circle.strictly_contains(&GaussianRational::ratio(1, 2)));
        assert!(circle.on_circle(&GaussianRational::integer(1)));
        assert!(circle.on_circle(&GaussianRational::ratio_pair(3, 5, 4, 5)));
        assert!(circle.strictly_outside(&GaussianRational::integer(2)));
    }

    #[test]
    fn cw_samples_run_backwards() {
        let ccw = OrientedCircle::ccw(GaussianRational::zero(), rat(1, 1)).unwrap();
        let cw = ccw.reversed();
        let n = 16;
        for k in 1..n {
            let a = ccw.sample_point(k, n);
            let b = cw.sample_point(n - k, n);
            assert!((a - b).norm() < 1e-12);
        }
        assert!((ccw.sample_point(0, n) - cw.sample_point(0, n)).norm() < 1e-15);
    }
}
