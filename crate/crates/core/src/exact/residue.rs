//! Exact residues of rational 1-forms `f dz` on the Riemann sphere.

use super::factored::FactoredRational;
use super::gaussian::GaussianRational;
use super::point::SpherePoint;
use super::series::TruncatedSeries;

/// Coefficient of `(z−p)⁻¹` in the local Laurent expansion of `f` at `p`.
///
/// Returns 0 wherever `f dz` is regular. At a finite pole of order `k` the
/// regular part of `f` is expanded as an exact truncated series to order
/// `k−1`. At infinity the form is pulled back through `z = 1/w`, where
/// `f dz` becomes `−f(1/w)/w² dw`.
pub fn residue(f: &FactoredRational, point: &SpherePoint) -> GaussianRational {
    match point {
        SpherePoint::Finite(p) => residue_finite(f, p),
        SpherePoint::Infinity => {
            let pulled = -&(&f.substitute_infinity()
                / &FactoredRational::linear(GaussianRational::zero()).pow(2));
            residue_finite(&pulled, &GaussianRational::zero())
        }
    }
}

fn residue_finite(f: &FactoredRational, p: &GaussianRational) -> GaussianRational {
    let valuation = f.valuation(&SpherePoint::Finite(p.clone()));
    if valuation >= 0 {
        return GaussianRational::zero();
    }
    // f = (z−p)^v · g with g regular and nonzero at p; the residue is the
    // t^(k−1) Taylor coefficient of g(p+t) where k is the pole order.
    let order = valuation.unsigned_abs() as usize;
    let mut series = TruncatedSeries::constant(f.unit().clone(), order);
    for (root, mult) in f.factors() {
        if root == p {
            continue;
        }
        let factor = TruncatedSeries::monic_linear(p - root, order);
        series = series.mul(&factor.pow(mult));
    }
    series.coeff(order - 1).clone()
}

/// Sum of the residues of `f dz` over every pole, including infinity.
/// The residue theorem makes this exactly zero for every rational `f`.
pub fn residue_sum_check(f: &FactoredRational) -> GaussianRational {
    let mut total = residue(f, &SpherePoint::Infinity);
    for (root, mult) in f.factors() {
        if mult < 0 {
            total = &total + &residue(f, &SpherePoint::Finite(root.clone()));
        }
    }
    total
}
