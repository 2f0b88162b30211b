//! Tame symbols of rational function pairs and the Weil product.

use std::collections::BTreeSet;

use super::factored::FactoredRational;
use super::gaussian::GaussianRational;
use super::point::SpherePoint;

/// The tame symbol of `f` and `g` at a sphere point:
///
/// `(f,g)_p = (−1)^{ν_p(f)·ν_p(g)} · [f^{ν_p(g)} / g^{ν_p(f)}](p)`.
///
/// The bracketed function has valuation zero at `p` by construction, so the
/// value is always a nonzero exact scalar. At infinity the symbol is
/// computed on the chart `z = 1/w` and evaluated at `w = 0`.
pub fn tame_symbol(
    f: &FactoredRational,
    g: &FactoredRational,
    point: &SpherePoint,
) -> GaussianRational {
    match point {
        SpherePoint::Infinity => tame_symbol(
            &f.substitute_infinity(),
            &g.substitute_infinity(),
            &SpherePoint::Finite(GaussianRational::zero()),
        ),
        SpherePoint::Finite(p) => {
            let m = f.valuation(point);
            let n = g.valuation(point);
            let bracket = &f.pow(n) / &g.pow(m);
            let value = bracket
                .eval(p)
                .expect("tame bracket is regular at the point");
            if m & 1 == 1 && n & 1 == 1 {
                -value
            } else {
                value
            }
        }
    }
}

/// Product of tame symbols over the union of both divisor supports,
/// always including infinity. Weil reciprocity makes this exactly 1.
pub fn weil_product(f: &FactoredRational, g: &FactoredRational) -> GaussianRational {
    let mut points: BTreeSet<SpherePoint> = BTreeSet::new();
    points.extend(f.divisor().support().cloned());
    points.extend(g.divisor().support().cloned());
    points.insert(SpherePoint::Infinity);
    let mut acc = GaussianRational::one();
    for point in &points {
        acc = &acc * &tame_symbol(f, g, point);
    }
    acc
}
