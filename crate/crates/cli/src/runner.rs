//! Check dispatch: executes a validated scenario and assembles reports.

use std::fmt::Write as _;

use thiserror::Error;

use deligne_core::bordered::{deligne_check, family_sweep, sweep_passes, FamilySpec};
use deligne_core::exact::{
    residue_sum_check, tame_symbol, weil_product, FactoredRational, GaussianRational, SpherePoint,
};
use deligne_core::loops::{deligne_pairing, LoopError, OrientedCircle, SampledLoop};
use deligne_core::{BigRational, BorderedDomain};

use crate::report::{circle_rows, fiber_rows, format_complex, CheckRecord, RunReport};
use crate::scenario::{Check, Scenario};

/// Command-line overrides for the scenario's numeric settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

/// Errors that make a run invalid rather than failed: inadmissible
/// functions, divisor points on contours, under-sampling, bad settings.
#[derive(Debug, Error)]
pub enum RunFailure {
    #[error("check {index} ({kind}): {message}")]
    Check {
        index: usize,
        kind: &'static str,
        message: String,
    },
}

fn fail(index: usize, kind: &'static str, error: impl std::fmt::Display) -> RunFailure {
    RunFailure::Check {
        index,
        kind,
        message: error.to_string(),
    }
}

pub struct RunOutcome {
    pub report: RunReport,
}

impl RunOutcome {
    pub fn exit_code(&self) -> u8 {
        if self.report.pass {
            0
        } else {
            1
        }
    }
}

fn constant_function(scenario: &Scenario, name: &str) -> FactoredRational {
    scenario
        .function(name)
        .as_constant()
        .expect("load validation keeps non-sweep functions t-independent")
}

fn constant_domain(scenario: &Scenario) -> Result<BorderedDomain, String> {
    let zero = BigRational::from_integer(0.into());
    scenario
        .domain
        .as_ref()
        .expect("load validation requires a domain here")
        .at(&zero)
        .map_err(|e| e.to_string())
}

/// Executes every check in declaration order. Check failures land in the
/// report (exit 1); validation and sampling errors abort the run (exit 2).
pub fn run(scenario: &Scenario, name: &str, options: &RunOptions) -> Result<RunOutcome, RunFailure> {
    let samples = options.samples.unwrap_or(scenario.numeric.samples);
    let tol = options.tol.unwrap_or(scenario.numeric.tol);
    let seed = options.seed.unwrap_or(scenario.numeric.seed);

    let mut checks = Vec::new();
    for (index, check) in scenario.checks.iter().enumerate() {
        let record = execute_check(scenario, check, index, samples, tol)?;
        checks.push(record);
    }
    let pass = checks.iter().all(CheckRecord::passed);
    Ok(RunOutcome {
        report: RunReport {
            scenario: name.to_string(),
            samples,
            tol,
            seed,
            pass,
            checks,
        },
    })
}

fn execute_check(
    scenario: &Scenario,
    check: &Check,
    index: usize,
    samples: usize,
    tol: f64,
) -> Result<CheckRecord, RunFailure> {
    let functions: Vec<String> = check
        .function_names()
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut record = CheckRecord {
        index,
        kind: check.kind().to_string(),
        functions,
        status: "pass".to_string(),
        detail: String::new(),
        defect: None,
        circles: None,
        fibers: None,
    };
    match check {
        Check::ResidueSum { f } => {
            let f = constant_function(scenario, f);
            let sum = residue_sum_check(&f);
            if sum.is_zero() {
                record.detail = "residue sum is exactly 0".to_string();
            } else {
                record.status = "fail".to_string();
                record.detail = format!("residue sum is {sum}, expected 0");
            }
        }
        Check::Weil { f, g } => {
            let f = constant_function(scenario, f);
            let g = constant_function(scenario, g);
            let product = weil_product(&f, &g);
            if product.is_one() {
                record.detail = "tame-symbol product is exactly 1".to_string();
            } else {
                record.status = "fail".to_string();
                record.detail = format!("tame-symbol product is {product}, expected 1");
            }
        }
        Check::Tame { f, g, at, expect } => {
            let f = constant_function(scenario, f);
            let g = constant_function(scenario, g);
            let value = tame_symbol(&f, &g, at);
            match expect {
                Some(expected) if *expected != value => {
                    record.status = "fail".to_string();
                    record.detail = format!("tame symbol at {at} is {value}, expected {expected}");
                }
                Some(_) => {
                    record.detail = format!("tame symbol at {at} is exactly {value}");
                }
                None => {
                    record.detail = format!("tame symbol at {at} is {value}");
                }
            }
        }
        Check::Deligne { f, g } => {
            let f = constant_function(scenario, f);
            let g = constant_function(scenario, g);
            let domain = constant_domain(scenario)
                .map_err(|message| RunFailure::Check {
                    index,
                    kind: "deligne",
                    message,
                })?;
            let report = deligne_check(&f, &g, &domain, samples, tol)
                .map_err(|e| fail(index, "deligne", e))?;
            record.status = if report.pass { "pass" } else { "fail" }.to_string();
            record.defect = Some(report.defect);
            record.detail = format!(
                "boundary product {} over {} circle(s)",
                format_complex(report.product),
                report.circles.len()
            );
            record.circles = Some(circle_rows(&report, ""));
        }
        Check::Sweep { f, g } => {
            let f_schedule = scenario.function(f);
            let g_schedule = scenario.function(g);
            let spec = FamilySpec {
                grid: scenario
                    .grid
                    .clone()
                    .expect("load validation requires a grid for sweeps"),
                domain: scenario
                    .domain
                    .clone()
                    .expect("load validation requires a domain for sweeps"),
            };
            let fibers = family_sweep(&spec, f_schedule, g_schedule, samples, tol);
            let pass = sweep_passes(&fibers);
            record.status = if pass { "pass" } else { "fail" }.to_string();
            let failed = fibers.iter().filter(|f| !f.passed()).count();
            record.detail = format!(
                "{} of {} fiber(s) pass",
                fibers.len() - failed,
                fibers.len()
            );
            record.defect = fibers
                .iter()
                .filter_map(|fiber| fiber.outcome.as_ref().ok().map(|r| r.defect))
                .fold(None, |acc, d| Some(acc.map_or(d, |m: f64| m.max(d))));
            let mut circles = Vec::new();
            for fiber in &fibers {
                if let Ok(report) = &fiber.outcome {
                    circles.extend(circle_rows(report, &fiber.t.to_string()));
                }
            }
            record.circles = Some(circles);
            record.fibers = Some(fiber_rows(&fibers));
        }
    }
    Ok(record)
}

/// One row of a convergence table.
#[derive(Debug)]
pub struct ConvergenceRow {
    pub samples: usize,
    pub defect: Option<f64>,
    pub note: String,
}

pub struct ConvergenceOutcome {
    pub rows: Vec<ConvergenceRow>,
    pub monotone: bool,
}

/// Defects below this are treated as converged to the rounding floor when
/// judging monotone refinement.
pub const CONVERGENCE_FLOOR: f64 = 1e-12;

impl ConvergenceOutcome {
    pub fn csv(&self) -> String {
        let mut out = String::from("samples,defect,note\n");
        for row in &self.rows {
            let defect = row
                .defect
                .map(|d| format!("{:.3e}", d))
                .unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", row.samples, defect, row.note);
        }
        out
    }

    pub fn render_human(&self) -> String {
        let mut out = String::from("samples    defect\n");
        for row in &self.rows {
            let defect = row
                .defect
                .map(|d| format!("{:.3e}", d))
                .unwrap_or_else(|| "-".to_string());
            let _ = writeln!(out, "{:<10} {:<12} {}", row.samples, defect, row.note);
        }
        let _ = writeln!(
            out,
            "monotone refinement: {}",
            if self.monotone { "yes" } else { "no" }
        );
        out
    }
}

/// Runs the scenario's deligne and tame checks over a grid of sample
/// counts and tabulates the worst defect per count. A row whose sampling
/// fails (for example under-sampled loops at small N) records the error and
/// the study continues.
pub fn convergence_study(
    scenario: &Scenario,
    grid: &[usize],
    options: &RunOptions,
) -> Result<ConvergenceOutcome, RunFailure> {
    let tol = options.tol.unwrap_or(scenario.numeric.tol);
    let eligible: Vec<(usize, &Check)> = scenario
        .checks
        .iter()
        .enumerate()
        .filter(|(_, check)| matches!(check, Check::Deligne { .. } | Check::Tame { .. }))
        .collect();
    if eligible.is_empty() {
        return Err(RunFailure::Check {
            index: 0,
            kind: "convergence",
            message: "scenario has no deligne or tame check".to_string(),
        });
    }
    let mut rows = Vec::new();
    for &n in grid {
        let mut worst: Option<f64> = None;
        let mut notes = Vec::new();
        for &(index, check) in &eligible {
            match convergence_defect(scenario, check, index, n, tol) {
                Ok(defect) => worst = Some(worst.map_or(defect, |w| w.max(defect))),
                Err(error) => notes.push(error.to_string()),
            }
        }
        rows.push(ConvergenceRow {
            samples: n,
            defect: worst,
            note: notes.join("; "),
        });
    }
    let monotone = rows
        .windows(2)
        .all(|pair| match (pair[0].defect, pair[1].defect) {
            (Some(prev), Some(next)) => next <= prev.max(CONVERGENCE_FLOOR),
            _ => true,
        });
    Ok(ConvergenceOutcome { rows, monotone })
}

fn convergence_defect(
    scenario: &Scenario,
    check: &Check,
    index: usize,
    samples: usize,
    tol: f64,
) -> Result<f64, RunFailure> {
    match check {
        Check::Deligne { f, g } => {
            let f = constant_function(scenario, f);
            let g = constant_function(scenario, g);
            let domain = constant_domain(scenario).map_err(|message| RunFailure::Check {
                index,
                kind: "deligne",
                message,
            })?;
            let report =
                deligne_check(&f, &g, &domain, samples, tol).map_err(|e| fail(index, "deligne", e))?;
            Ok(report.defect.max(report.max_circle_defect()))
        }
        Check::Tame { f, g, at, .. } => {
            let f = constant_function(scenario, f);
            let g = constant_function(scenario, g);
            let point = match at {
                SpherePoint::Finite(p) => p.clone(),
                SpherePoint::Infinity => {
                    return Err(RunFailure::Check {
                        index,
                        kind: "tame",
                        message: "tame at inf has no finite contour to refine".to_string(),
                    })
                }
            };
            let circle = isolating_circle(&f, &g, &point).map_err(|e| fail(index, "tame", e))?;
            let f_loop =
                SampledLoop::restrict(&f, &circle, samples).map_err(|e| fail(index, "tame", e))?;
            let g_loop =
                SampledLoop::restrict(&g, &circle, samples).map_err(|e| fail(index, "tame", e))?;
            let pairing =
                deligne_pairing(&f_loop, &g_loop, None).map_err(|e| fail(index, "tame", e))?;
            let exact = tame_symbol(&f, &g, at);
            Ok((pairing - exact.to_complex()).norm())
        }
        _ => unreachable!("only deligne and tame checks are eligible"),
    }
}

/// A circle around `point` that strictly encloses no other divisor point of
/// `f` or `g`: the radius starts at 1/4 and halves until the squared radius
/// is at most a quarter of the squared distance to the nearest other point.
fn isolating_circle(
    f: &FactoredRational,
    g: &FactoredRational,
    point: &GaussianRational,
) -> Result<OrientedCircle, LoopError> {
    let quarter = BigRational::new(1.into(), 4.into());
    let mut radius = quarter.clone();
    let nearest_sqr = f
        .factors()
        .chain(g.factors())
        .filter(|(root, _)| *root != point)
        .map(|(root, _)| (root - point).norm_sqr())
        .min();
    if let Some(d2) = nearest_sqr {
        while &(&radius * &radius) / &d2 > quarter {
            radius /= BigRational::from_integer(2.into());
        }
    }
    OrientedCircle::ccw(point.clone(), radius)
}
