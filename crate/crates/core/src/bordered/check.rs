//! The analytic reciprocity check on a bordered domain.
//!
//! For admissible `f`, `g` the product of the pairings over the induced
//! boundary circles equals 1; each individual pairing has an exact
//! tame-symbol oracle.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::exact::{FactoredRational, GaussianRational};
use crate::loops::{deligne_pairing, dlog_exact, pairing_oracle, OrientedCircle, SampledLoop};

use super::domain::BorderedDomain;
use super::CheckError;

/// One boundary circle's share of a reciprocity check.
#[derive(Clone, Debug)]
pub struct CircleReport {
    pub circle: OrientedCircle,
    /// Numerical pairing value on this circle.
    pub pairing: Complex64,
    /// Exact expected value.
    pub oracle: GaussianRational,
    /// `|pairing − oracle|`.
    pub defect: f64,
}

/// Outcome of a reciprocity check: per-boundary pairings, their product,
/// and the distance of the product from 1.
#[derive(Clone, Debug)]
pub struct ReciprocityReport {
    pub circles: Vec<CircleReport>,
    pub product: Complex64,
    /// `|product − 1|`.
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ReciprocityReport {
    /// Largest per-circle deviation from the exact oracle.
    pub fn max_circle_defect(&self) -> f64 {
        self.circles.iter().map(|c| c.defect).fold(0.0, f64::max)
    }

    /// CSV rows in the sweep format, one per circle, with a caller-chosen
    /// label in the `t` column.
    pub fn csv_rows(&self, t_label: &str) -> String {
        let mut out = String::new();
        for (index, c) in self.circles.iter().enumerate() {
            let oracle = c.oracle.to_complex();
            let _ = writeln!(
                out,
                "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.3e}",
                t_label, index, c.pairing.re, c.pairing.im, oracle.re, oracle.im, c.defect
            );
        }
        out
    }
}

/// Runs the reciprocity check: pairs `f` and `g` over every induced
/// boundary circle at `samples` points, compares each value with its exact
/// oracle, and tests the boundary product against 1.
pub fn deligne_check(
    f: &FactoredRational,
    g: &FactoredRational,
    domain: &BorderedDomain,
    samples: usize,
    tolerance: f64,
) -> Result<ReciprocityReport, CheckError> {
    domain.check_admissible(f)?;
    domain.check_admissible(g)?;
    let mut circles = Vec::new();
    let mut product = Complex64::new(1.0, 0.0);
    for circle in domain.induced_boundary() {
        let f_loop = SampledLoop::restrict(f, &circle, samples)?;
        let g_loop = SampledLoop::restrict(g, &circle, samples)?;
        let g_dlog = dlog_exact(g, &circle, samples)?;
        let pairing = deligne_pairing(&f_loop, &g_loop, Some(&g_dlog))?;
        let oracle = pairing_oracle(f, g, &circle)?;
        let defect = (pairing - oracle.to_complex()).norm();
        product *= pairing;
        circles.push(CircleReport {
            circle,
            pairing,
            oracle,
            defect,
        });
    }
    let defect = (product - Complex64::new(1.0, 0.0)).norm();
    Ok(ReciprocityReport {
        circles,
        product,
        defect,
        tolerance,
        pass: defect <= tolerance,
    })
}

/// Exact per-circle expected values over the induced boundary. Their exact
/// product is 1 for every admissible configuration: each enclosed divisor
/// point is counted once by the outer circle and once, inverted, by the
/// hole that contains it — or not at all.
pub fn tame_circle_oracle(
    f: &FactoredRational,
    g: &FactoredRational,
    domain: &BorderedDomain,
) -> Result<Vec<GaussianRational>, CheckError> {
    domain.check_admissible(f)?;
    domain.check_admissible(g)?;
    let mut values = Vec::new();
    for circle in domain.induced_boundary() {
        values.push(pairing_oracle(f, g, &circle)?);
    }
    Ok(values)
}
