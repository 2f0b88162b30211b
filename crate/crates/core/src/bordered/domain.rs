//! Planar bordered domains: a closed disk minus open holes.

use crate::exact::{FactoredRational, GaussianRational};
use crate::loops::{Orientation, OrientedCircle};

use super::{AdmissibilityError, DomainError};

/// Where a finite point sits relative to a bordered domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PointLocation {
    /// Strictly outside the outer circle.
    OutsideOuter,
    /// Strictly inside hole `index`.
    InsideHole(usize),
    /// On boundary circle `index` (0 is the outer circle, holes follow).
    OnBoundary(usize),
    /// In the interior of the domain body.
    Body,
}

/// A closed outer disk minus open holes — the desk-scale compact surface
/// with boundary. Circles are stored counterclockwise; the induced boundary
/// orientation is outer-counterclockwise, holes-clockwise.
///
/// Construction enforces, exactly over ℚ via squared comparisons, that every
/// hole's closed disk lies strictly inside the outer open disk and that
/// holes have pairwise disjoint closed disks. Tangent configurations are
/// rejected: there is no floating tolerance anywhere in admissibility.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BorderedDomain {
    outer: OrientedCircle,
    holes: Vec<OrientedCircle>,
}

impl BorderedDomain {
    pub fn new(outer: OrientedCircle, holes: Vec<OrientedCircle>) -> Result<Self, DomainError> {
        let outer = normalize_ccw(outer);
        let holes: Vec<OrientedCircle> = holes.into_iter().map(normalize_ccw).collect();
        for (index, hole) in holes.iter().enumerate() {
            // |c_h − c_o| + r_h < r_o  ⟺  r_o − r_h > 0 and d² < (r_o − r_h)²
            let slack = outer.radius() - hole.radius();
            let dist_sqr = (hole.center() - outer.center()).norm_sqr();
            if slack <= num_rational::BigRational::from_integer(0.into())
                || dist_sqr >= &slack * &slack
            {
                return Err(DomainError::HoleNotInsideOuter { index });
            }
        }
        for first in 0..holes.len() {
            for second in (first + 1)..holes.len() {
                // disjoint closed disks: d² > (r₁ + r₂)²
                let sum = holes[first].radius() + holes[second].radius();
                let dist_sqr = (holes[first].center() - holes[second].center()).norm_sqr();
                if dist_sqr <= &sum * &sum {
                    return Err(DomainError::HolesOverlap { first, second });
                }
            }
        }
        Ok(Self { outer, holes })
    }

    pub fn outer(&self) -> &OrientedCircle {
        &self.outer
    }

    pub fn holes(&self) -> &[OrientedCircle] {
        &self.holes
    }

    /// The boundary with its induced orientation: the outer circle
    /// counterclockwise followed by each hole clockwise.
    pub fn induced_boundary(&self) -> Vec<OrientedCircle> {
        let mut boundary = Vec::with_capacity(1 + self.holes.len());
        boundary.push(self.outer.clone());
        boundary.extend(self.holes.iter().map(OrientedCircle::reversed));
        boundary
    }

    /// Exact classification of a finite point.
    pub fn classify(&self, point: &GaussianRational) -> PointLocation {
        if self.outer.on_circle(point) {
            return PointLocation::OnBoundary(0);
        }
        if self.outer.strictly_outside(point) {
            return PointLocation::OutsideOuter;
        }
        for (index, hole) in self.holes.iter().enumerate() {
            if hole.on_circle(point) {
                return PointLocation::OnBoundary(index + 1);
            }
            if hole.strictly_contains(point) {
                return PointLocation::InsideHole(index);
            }
        }
        PointLocation::Body
    }

    /// A function is admissible when every divisor point lies strictly
    /// inside some hole or strictly outside the outer circle — equivalently,
    /// its restriction to the closed domain is nonvanishing and pole-free.
    pub fn check_admissible(&self, f: &FactoredRational) -> Result<(), AdmissibilityError> {
        for (root, _) in f.factors() {
            match self.classify(root) {
                PointLocation::OutsideOuter | PointLocation::InsideHole(_) => {}
                PointLocation::OnBoundary(circle) => {
                    return Err(AdmissibilityError::OnContour {
                        point: root.clone(),
                        circle,
                    });
                }
                PointLocation::Body => {
                    return Err(AdmissibilityError::InBody {
                        point: root.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn admissible(&self, f: &FactoredRational) -> bool {
        self.check_admissible(f).is_ok()
    }
}

fn normalize_ccw(circle: OrientedCircle) -> OrientedCircle {
    match circle.orientation() {
        Orientation::Ccw => circle,
        Orientation::Cw => circle.reversed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn circle(center: GaussianRational, n: i64, d: i64) -> OrientedCircle {
        OrientedCircle::ccw(center, rat(n, d)).unwrap()
    }

    fn annulus() -> BorderedDomain {
        BorderedDomain::new(
            circle(GaussianRational::zero(), 2, 1),
            vec![circle(GaussianRational::zero(), 1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn induced_boundary_orientations() {
        let domain = annulus();
        let boundary = domain.induced_boundary();
        assert_eq!(boundary.len(), 2);
        assert_eq!(boundary[0].orientation(), Orientation::Ccw);
        assert_eq!(boundary[1].orientation(), Orientation::Cw);

        let disk = BorderedDomain::new(circle(GaussianRational::zero(), 1, 1), vec![]).unwrap();
        assert_eq!(disk.induced_boundary().len(), 1);

        let pants = BorderedDomain::new(
            circle(GaussianRational::zero(), 4, 1),
            vec![
                circle(GaussianRational::zero(), 1, 2),
                circle(GaussianRational::integer(2), 1, 2),
            ],
        )
        .unwrap();
        let boundary = pants.induced_boundary();
        assert_eq!(boundary.len(), 3);
        assert!(boundary[1..]
            .iter()
            .all(|c| c.orientation() == Orientation::Cw));
    }

    #[test]
    fn admissibility_examples() {
        let domain = annulus();
        let z: FactoredRational = "z".parse().unwrap();
        assert!(domain.admissible(&z));

        let in_body: FactoredRational = "(z-1)".parse().unwrap();
        let err = domain.check_admissible(&in_body).unwrap_err();
        assert!(matches!(err, AdmissibilityError::InBody { .. }));

        let in_hole: FactoredRational = "(z-1/4)".parse().unwrap();
        assert!(domain.admissible(&in_hole));
    }

    #[test]
    fn on_contour_is_reported_distinctly() {
        let domain = annulus();
        let on_outer: FactoredRational = "(z-2)".parse().unwrap();
        assert!(matches!(
            domain.check_admissible(&on_outer),
            Err(AdmissibilityError::OnContour { circle: 0, .. })
        ));
        let on_hole: FactoredRational = "(z-1/2)".parse().unwrap();
        assert!(matches!(
            domain.check_admissible(&on_hole),
            Err(AdmissibilityError::OnContour { circle: 1, .. })
        ));
    }

    #[test]
    fn tangent_and_overlapping_circles_are_rejected_exactly() {
        // internally tangent: |c| + r_h = r_o
        let err = BorderedDomain::new(
            circle(GaussianRational::zero(), 2, 1),
            vec![circle(GaussianRational::ratio(3, 2), 1, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, DomainError::HoleNotInsideOuter { index: 0 }));

        // externally tangent holes: distance = r₁ + r₂
        let err = BorderedDomain::new(
            circle(GaussianRational::zero(), 4, 1),
            vec![
                circle(GaussianRational::zero(), 1, 2),
                circle(GaussianRational::integer(1), 1, 2),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, DomainError::HolesOverlap { first: 0, second: 1 }));

        // hole entirely outside the outer disk
        let err = BorderedDomain::new(
            circle(GaussianRational::zero(), 1, 1),
            vec![circle(GaussianRational::integer(5), 1, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, DomainError::HoleNotInsideOuter { index: 0 }));
    }

    #[test]
    fn classification_is_exact_on_rational_boundary_points() {
        let domain = annulus();
        let p = GaussianRational::ratio_pair(6, 5, 8, 5); // |p| = 2 exactly
        assert_eq!(domain.classify(&p), PointLocation::OnBoundary(0));
        let q = GaussianRational::ratio_pair(3, 10, 4, 10); // |q| = 1/2 exactly
        assert_eq!(domain.classify(&q), PointLocation::OnBoundary(1));
    }
}
