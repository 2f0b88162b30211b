//! Families of reciprocity checks over a sampled rational parameter.
//!
//! Roots, units, centers, and radii may depend affinely on a parameter `t`;
//! instantiating at a rational grid value keeps every fiber fully exact, so
//! admissibility and the tame-symbol oracle work unchanged fiber by fiber.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::parser::{Cursor, ParseError};
use crate::exact::{ExactError, FactoredRational, GaussianRational};
use crate::loops::{LoopError, OrientedCircle};

use super::check::{deligne_check, ReciprocityReport};
use super::domain::BorderedDomain;
use super::{CheckError, DomainError};

/// A Gaussian-rational scalar `base + slope·t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineScalar {
    pub base: GaussianRational,
    pub slope: GaussianRational,
}

impl AffineScalar {
    pub fn constant(base: GaussianRational) -> Self {
        Self {
            base,
            slope: GaussianRational::zero(),
        }
    }

    pub fn at(&self, t: &BigRational) -> GaussianRational {
        &self.base + &(&self.slope * &GaussianRational::from_real(t.clone()))
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

/// A real rational scalar `base + slope·t`, used for radii.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineRational {
    pub base: BigRational,
    pub slope: BigRational,
}

impl AffineRational {
    pub fn constant(base: BigRational) -> Self {
        Self {
            base,
            slope: BigRational::zero(),
        }
    }

    pub fn at(&self, t: &BigRational) -> BigRational {
        &self.base + &self.slope * t
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

/// A factored rational function whose unit and roots move affinely in `t`.
/// Units are kept as a product of affine scalars with exponents so that
/// scheduled constants compose under `*` and `/`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ScheduledFunction {
    pub units: Vec<(AffineScalar, i64)>,
    pub factors: Vec<(AffineScalar, i64)>,
}

impl ScheduledFunction {
    pub fn from_rational(f: &FactoredRational) -> Self {
        Self {
            units: vec![(AffineScalar::constant(f.unit().clone()), 1)],
            factors: f
                .factors()
                .map(|(root, mult)| (AffineScalar::constant(root.clone()), mult))
                .collect(),
        }
    }

    /// Instantiates the fiber at `t`, merging any roots that collide there.
    pub fn at(&self, t: &BigRational) -> Result<FactoredRational, ExactError> {
        let mut unit = GaussianRational::one();
        for (scalar, exponent) in &self.units {
            let value = scalar.at(t);
            if value.is_zero() {
                return Err(ExactError::ZeroUnit);
            }
            unit = &unit * &value.pow(*exponent);
        }
        FactoredRational::from_parts(
            unit,
            self.factors
                .iter()
                .map(|(schedule, mult)| (schedule.at(t), *mult)),
        )
    }

    pub fn depends_on_t(&self) -> bool {
        self.units.iter().any(|(s, _)| !s.is_constant())
            || self.factors.iter().any(|(s, _)| !s.is_constant())
    }

    /// The underlying plain function when nothing depends on `t`.
    pub fn as_constant(&self) -> Option<FactoredRational> {
        if self.depends_on_t() {
            None
        } else {
            self.at(&BigRational::zero()).ok()
        }
    }
}

/// A circle whose center and radius move affinely in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScheduledCircle {
    pub center: AffineScalar,
    pub radius: AffineRational,
}

impl ScheduledCircle {
    pub fn constant(circle: &OrientedCircle) -> Self {
        Self {
            center: AffineScalar::constant(circle.center().clone()),
            radius: AffineRational::constant(circle.radius().clone()),
        }
    }

    pub fn at(&self, t: &BigRational) -> Result<OrientedCircle, LoopError> {
        OrientedCircle::ccw(self.center.at(t), self.radius.at(t))
    }
}

/// Outer circle and holes with affine schedules.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScheduledDomain {
    pub outer: ScheduledCircle,
    pub holes: Vec<ScheduledCircle>,
}

impl ScheduledDomain {
    pub fn constant(domain: &BorderedDomain) -> Self {
        Self {
            outer: ScheduledCircle::constant(domain.outer()),
            holes: domain.holes().iter().map(ScheduledCircle::constant).collect(),
        }
    }

    pub fn at(&self, t: &BigRational) -> Result<BorderedDomain, FiberError> {
        let outer = self.outer.at(t)?;
        let holes = self
            .holes
            .iter()
            .map(|h| h.at(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BorderedDomain::new(outer, holes)?)
    }
}

/// The family to sweep: a finite rational grid and the domain schedule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    pub grid: Vec<BigRational>,
    pub domain: ScheduledDomain,
}

/// Anything that can go wrong inside one fiber of a sweep.
#[derive(Clone, PartialEq, Debug, Error)]
pub enum FiberError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// One fiber's outcome, tagged with its grid value.
#[derive(Clone, Debug)]
pub struct FiberReport {
    pub t: BigRational,
    pub outcome: Result<ReciprocityReport, FiberError>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(report) if report.pass)
    }
}

/// Runs one reciprocity check per grid value. Fibers fail independently:
/// an error at one grid value is recorded and the sweep continues.
pub fn family_sweep(
    spec: &FamilySpec,
    f: &ScheduledFunction,
    g: &ScheduledFunction,
    samples: usize,
    tolerance: f64,
) -> Vec<FiberReport> {
    spec.grid
        .iter()
        .map(|t| FiberReport {
            t: t.clone(),
            outcome: run_fiber(spec, f, g, t, samples, tolerance),
        })
        .collect()
}

fn run_fiber(
    spec: &FamilySpec,
    f: &ScheduledFunction,
    g: &ScheduledFunction,
    t: &BigRational,
    samples: usize,
    tolerance: f64,
) -> Result<ReciprocityReport, FiberError> {
    let domain = spec.domain.at(t)?;
    let f_t = f.at(t)?;
    let g_t = g.at(t)?;
    Ok(deligne_check(&f_t, &g_t, &domain, samples, tolerance)?)
}

pub fn sweep_passes(reports: &[FiberReport]) -> bool {
    !reports.is_empty() && reports.iter().all(FiberReport::passed)
}

/// CSV with columns `t,circle,pairing_re,pairing_im,oracle_re,oracle_im,defect`.
/// Failed fibers contribute no rows; they are reported alongside.
pub fn sweep_csv(reports: &[FiberReport]) -> String {
    let mut out = String::from("t,circle,pairing_re,pairing_im,oracle_re,oracle_im,defect\n");
    for fiber in reports {
        if let Ok(report) = &fiber.outcome {
            let _ = write!(out, "{}", report.csv_rows(&fiber.t.to_string()));
        }
    }
    out
}

/// Parses an expression in the factored grammar whose scalars may carry an
/// affine `t` term: `a`, `a+b*t`, `a-t`, `b*t`, `t`.
pub fn parse_scheduled(text: &str) -> Result<ScheduledFunction, ParseError> {
    let mut cur = Cursor::new(text);
    let mut acc = parse_scheduled_factor(&mut cur)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'*') => {
                cur.bump();
                let rhs = parse_scheduled_factor(&mut cur)?;
                acc.units.extend(rhs.units);
                acc.factors.extend(rhs.factors);
            }
            Some(b'/') => {
                cur.bump();
                let rhs = parse_scheduled_factor(&mut cur)?;
                acc.units
                    .extend(rhs.units.into_iter().map(|(s, e)| (s, -e)));
                acc.factors
                    .extend(rhs.factors.into_iter().map(|(s, m)| (s, -m)));
            }
            Some(_) => return Err(cur.err("expected '*', '/', or end of input")),
        }
    }
    Ok(acc)
}

/// Parses a standalone affine scalar literal.
pub fn parse_affine_scalar(text: &str) -> Result<AffineScalar, ParseError> {
    let mut cur = Cursor::new(text);
    let value = parse_affine(&mut cur)?;
    cur.expect_end()?;
    Ok(value)
}

/// Parses a standalone affine radius literal; both parts must be real.
pub fn parse_affine_rational(text: &str) -> Result<AffineRational, ParseError> {
    let scalar = parse_affine_scalar(text)?;
    if !scalar.base.im().is_zero() || !scalar.slope.im().is_zero() {
        return Err(ParseError {
            position: 0,
            message: "expected a real rational literal".into(),
        });
    }
    Ok(AffineRational {
        base: scalar.base.re().clone(),
        slope: scalar.slope.re().clone(),
    })
}

fn parse_scheduled_factor(cur: &mut Cursor) -> Result<ScheduledFunction, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            cur.skip_ws();
            cur.expect(b'z')?;
            cur.skip_ws();
            cur.expect(b'-')?;
            let root = parse_affine(cur)?;
            cur.skip_ws();
            cur.expect(b')')?;
            cur.skip_ws();
            let exponent = if cur.eat(b'^') {
                cur.parse_signed_int()?
            } else {
                1
            };
            Ok(ScheduledFunction {
                units: Vec::new(),
                factors: vec![(root, exponent)],
            })
        }
        Some(b'z') => {
            cur.bump();
            Ok(ScheduledFunction {
                units: Vec::new(),
                factors: vec![(AffineScalar::constant(GaussianRational::zero()), 1)],
            })
        }
        Some(_) => {
            let scalar = parse_affine(cur)?;
            Ok(ScheduledFunction {
                units: vec![(scalar, 1)],
                factors: Vec::new(),
            })
        }
        None => Err(cur.err("expected factor, found end of input")),
    }
}

/// One signed term of an affine literal.
enum AffineTerm {
    Real(GaussianRational),
    Imag(GaussianRational),
    Slope(GaussianRational),
}

/// Affine literal: `[re] [± im·i] [± coef·'t']` in that order, at least one
/// term. `t` and `coef*t` may also stand alone.
fn parse_affine(cur: &mut Cursor) -> Result<AffineScalar, ParseError> {
    cur.skip_ws();
    let mut base = GaussianRational::zero();
    let mut slope = GaussianRational::zero();
    let mut seen_imag = false;
    let first = parse_affine_term(cur, true)?;
    match first {
        AffineTerm::Real(v) => base = v,
        AffineTerm::Imag(v) => {
            base = v;
            seen_imag = true;
        }
        AffineTerm::Slope(v) => {
            return Ok(AffineScalar {
                base,
                slope: v,
            })
        }
    }
    for _ in 0..2 {
        let saved = cur.pos();
        cur.skip_ws();
        let negative = match cur.peek() {
            Some(b'+') => {
                cur.bump();
                false
            }
            Some(b'-') => {
                cur.bump();
                true
            }
            _ => {
                cur.set_pos(saved);
                break;
            }
        };
        cur.skip_ws();
        match parse_affine_term(cur, false) {
            Ok(AffineTerm::Imag(v)) if !seen_imag => {
                base = &base + &(if negative { -v } else { v });
                seen_imag = true;
            }
            Ok(AffineTerm::Slope(v)) => {
                slope = if negative { -v } else { v };
                return Ok(AffineScalar { base, slope });
            }
            _ => {
                cur.set_pos(saved);
                break;
            }
        }
    }
    Ok(AffineScalar { base, slope })
}

/// `t` | `i ['*' 't']` | `rat ['i'] ['*' 't']`, sign handled by the caller
/// except for an optional leading sign on the very first term.
fn parse_affine_term(cur: &mut Cursor, leading: bool) -> Result<AffineTerm, ParseError> {
    let negative = if leading { cur.eat_sign() } else { false };
    cur.skip_ws();
    let apply = |v: GaussianRational| if negative { -v } else { v };
    if cur.eat(b't') {
        return Ok(AffineTerm::Slope(apply(GaussianRational::one())));
    }
    let (value, imag) = if cur.eat(b'i') {
        (GaussianRational::i(), true)
    } else {
        if !matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
            return Err(cur.err("expected scalar or 't'"));
        }
        let r = cur.parse_unsigned_rat()?;
        let saved = cur.pos();
        cur.skip_ws();
        if cur.eat(b'i') {
            (GaussianRational::new(BigRational::zero(), r), true)
        } else {
            cur.set_pos(saved);
            (GaussianRational::from_real(r), false)
        }
    };
    // an immediately following '*t' turns the value into a slope coefficient
    let saved = cur.pos();
    cur.skip_ws();
    if cur.eat(b'*') {
        cur.skip_ws();
        if cur.eat(b't') {
            return Ok(AffineTerm::Slope(apply(value)));
        }
    }
    cur.set_pos(saved);
    if imag {
        Ok(AffineTerm::Imag(apply(value)))
    } else {
        Ok(AffineTerm::Real(apply(value)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::integer(n)
    }

    #[test]
    fn affine_literals() {
        let a = parse_affine_scalar("3+t").unwrap();
        assert_eq!(a.base, g(3));
        assert_eq!(a.slope, g(1));

        let a = parse_affine_scalar("3-1/2*t").unwrap();
        assert_eq!(a.base, g(3));
        assert_eq!(a.slope, GaussianRational::ratio(-1, 2));

        let a = parse_affine_scalar("t").unwrap();
        assert_eq!(a.base, g(0));
        assert_eq!(a.slope, g(1));

        let a = parse_affine_scalar("-t").unwrap();
        assert_eq!(a.slope, g(-1));

        let a = parse_affine_scalar("2*t").unwrap();
        assert_eq!(a.slope, g(2));

        let a = parse_affine_scalar("3/10-2/5i+2/5i*t").unwrap();
        assert_eq!(a.base, GaussianRational::ratio_pair(3, 10, -2, 5));
        assert_eq!(a.slope, GaussianRational::ratio_pair(0, 1, 2, 5));

        let a = parse_affine_scalar("1+2i").unwrap();
        assert_eq!(a.base, GaussianRational::ratio_pair(1, 1, 2, 1));
        assert!(a.is_constant());
    }

    #[test]
    fn affine_rejects_plain_sums() {
        assert!(parse_affine_scalar("2+3").is_err());
        assert!(parse_affine_scalar("i+2").is_err());
    }

    #[test]
    fn scheduled_expression_instantiates_per_fiber() {
        let f = parse_scheduled("(z-3+t)").unwrap();
        let f0 = f.at(&rat(0, 1)).unwrap();
        assert_eq!(f0, "(z-3)".parse().unwrap());
        let fq = f.at(&rat(1, 4)).unwrap();
        assert_eq!(fq, "(z-13/4)".parse().unwrap());
        assert!(f.depends_on_t());
        assert!(f.as_constant().is_none());
    }

    #[test]
    fn scheduled_constants_and_divisions() {
        let f = parse_scheduled("2 / (z-1) * t").unwrap();
        let f2 = f.at(&rat(3, 1)).unwrap();
        assert_eq!(f2, "6 * (z-1)^-1".parse().unwrap());
        // t = 0 kills the unit
        assert!(matches!(f.at(&rat(0, 1)), Err(ExactError::ZeroUnit)));
    }

    #[test]
    fn colliding_roots_merge_at_instantiation() {
        let f = parse_scheduled("(z-1+t) * (z-2)^-1").unwrap();
        let collided = f.at(&rat(1, 1)).unwrap();
        assert_eq!(collided, FactoredRational::one());
    }

    #[test]
    fn radius_literals_must_be_real() {
        assert!(parse_affine_rational("1/2+1/4*t").is_ok());
        assert!(parse_affine_rational("i").is_err());
        assert!(parse_affine_rational("1+2i*t").is_err());
    }

    #[test]
    fn constant_family_repeats_the_report() {
        let spec = FamilySpec {
            grid: (0..5).map(|k| rat(k, 1)).collect(),
            domain: ScheduledDomain {
                outer: ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(2, 1)),
                },
                holes: vec![ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(1, 2)),
                }],
            },
        };
        let f = parse_scheduled("z").unwrap();
        let g_fn = parse_scheduled("(z-3)").unwrap();
        let reports = family_sweep(&spec, &f, &g_fn, 256, 1e-8);
        assert_eq!(reports.len(), 5);
        assert!(sweep_passes(&reports));
        let first = reports[0].outcome.as_ref().unwrap();
        for fiber in &reports[1..] {
            let r = fiber.outcome.as_ref().unwrap();
            assert_eq!(r.product, first.product);
        }
    }

    #[test]
    fn annulus_sweep_tracks_the_moving_root() {
        let spec = FamilySpec {
            grid: vec![rat(0, 1), rat(1, 4), rat(1, 2)],
            domain: ScheduledDomain {
                outer: ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(2, 1)),
                },
                holes: vec![ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(1, 2)),
                }],
            },
        };
        let f = parse_scheduled("z").unwrap();
        let g_fn = parse_scheduled("(z-3+t)").unwrap();
        let reports = family_sweep(&spec, &f, &g_fn, 512, 1e-8);
        assert!(sweep_passes(&reports));
        // outer pairing is −1/(3+t) per fiber
        let expected = [
            GaussianRational::ratio(-1, 3),
            GaussianRational::ratio(-4, 13),
            GaussianRational::ratio(-2, 7),
        ];
        for (fiber, want) in reports.iter().zip(&expected) {
            let report = fiber.outcome.as_ref().unwrap();
            assert_eq!(&report.circles[0].oracle, want, "at t = {}", fiber.t);
        }
    }

    #[test]
    fn on_contour_fiber_is_rejected_others_pass() {
        let spec = FamilySpec {
            grid: vec![rat(1, 2), rat(1, 1), rat(2, 1)],
            domain: ScheduledDomain {
                outer: ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(2, 1)),
                },
                holes: vec![ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(1, 2)),
                }],
            },
        };
        let f = parse_scheduled("z").unwrap();
        // root 3/10 + (2/5)(t−1)i sits inside the hole except at t = 2,
        // where |root|² = 9/100 + 16/100 = 1/4 exactly
        let g_fn = parse_scheduled("(z-3/10-2/5i+2/5i*t)").unwrap();
        let reports = family_sweep(&spec, &f, &g_fn, 512, 1e-8);
        assert!(reports[0].passed());
        assert!(reports[1].passed());
        let err = reports[2].outcome.as_ref().unwrap_err();
        assert!(err.to_string().contains("on"), "unexpected error {err}");
        assert!(!sweep_passes(&reports));
    }

    #[test]
    fn sweep_csv_has_the_seven_columns() {
        let spec = FamilySpec {
            grid: vec![rat(0, 1)],
            domain: ScheduledDomain {
                outer: ScheduledCircle {
                    center: AffineScalar::constant(g(0)),
                    radius: AffineRational::constant(rat(2, 1)),
                },
                holes: vec![],
            },
        };
        let f = parse_scheduled("(z-3)").unwrap();
        let g_fn = parse_scheduled("(z-5)").unwrap();
        let reports = family_sweep(&spec, &f, &g_fn, 64, 1e-8);
        let csv = sweep_csv(&reports);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,circle,pairing_re,pairing_im,oracle_re,oracle_im,defect"
        );
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 7);
        assert!(row.starts_with("0,0,"));
    }
}
