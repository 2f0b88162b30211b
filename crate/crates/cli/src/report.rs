//! Machine-readable run reports and their human-readable rendering.

use std::fmt::Write as _;

use serde::Serialize;

use deligne_core::bordered::{FiberReport, ReciprocityReport};
use deligne_core::Complex64;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub index: usize,
    pub kind: String,
    pub functions: Vec<String>,
    pub status: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circles: Option<Vec<CircleRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<FiberRow>>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Serialize)]
pub struct CircleRow {
    pub t: String,
    pub circle: usize,
    pub orientation: String,
    pub center: String,
    pub radius: String,
    pub pairing_re: f64,
    pub pairing_im: f64,
    pub oracle: String,
    pub oracle_re: f64,
    pub oracle_im: f64,
    pub defect: f64,
}

#[derive(Debug, Serialize)]
pub struct FiberRow {
    pub t: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn circle_rows(report: &ReciprocityReport, t_label: &str) -> Vec<CircleRow> {
    report
        .circles
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let oracle = c.oracle.to_complex();
            CircleRow {
                t: t_label.to_string(),
                circle: index,
                orientation: c.circle.orientation().to_string(),
                center: c.circle.center().to_string(),
                radius: c.circle.radius().to_string(),
                pairing_re: c.pairing.re,
                pairing_im: c.pairing.im,
                oracle: c.oracle.to_string(),
                oracle_re: oracle.re,
                oracle_im: oracle.im,
                defect: c.defect,
            }
        })
        .collect()
}

pub fn fiber_rows(fibers: &[FiberReport]) -> Vec<FiberRow> {
    fibers
        .iter()
        .map(|fiber| match &fiber.outcome {
            Ok(report) => FiberRow {
                t: fiber.t.to_string(),
                status: if report.pass { "pass" } else { "fail" }.to_string(),
                defect: Some(report.defect),
                error: None,
            },
            Err(error) => FiberRow {
                t: fiber.t.to_string(),
                status: "error".to_string(),
                defect: None,
                error: Some(error.to_string()),
            },
        })
        .collect()
}

pub fn format_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{:.12}+{:.12}i", z.re, z.im)
    } else {
        format!("{:.12}-{:.12}i", z.re, -z.im)
    }
}

/// The seven-column CSV of per-circle pairings across deligne and sweep
/// checks: `t,circle,pairing_re,pairing_im,oracle_re,oracle_im,defect`.
pub fn circles_csv(report: &RunReport) -> String {
    let mut out = String::from("t,circle,pairing_re,pairing_im,oracle_re,oracle_im,defect\n");
    for check in &report.checks {
        if let Some(circles) = &check.circles {
            for row in circles {
                let _ = writeln!(
                    out,
                    "{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.3e}",
                    row.t,
                    row.circle,
                    row.pairing_re,
                    row.pairing_im,
                    row.oracle_re,
                    row.oracle_im,
                    row.defect
                );
            }
        }
    }
    out
}

pub fn render_human(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scenario {}: {} check(s), samples={}, tol={:.1e}, seed={}",
        report.scenario,
        report.checks.len(),
        report.samples,
        report.tol,
        report.seed
    );
    for check in &report.checks {
        let verdict = if check.passed() { "PASS" } else { "FAIL" };
        let defect = check
            .defect
            .map(|d| format!("  defect {:.3e}", d))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "[{}] {}({}) ... {}{}  {}",
            check.index + 1,
            check.kind,
            check.functions.join(", "),
            verdict,
            defect,
            check.detail
        );
        if let Some(circles) = &check.circles {
            for row in circles {
                let t_note = if row.t.is_empty() {
                    String::new()
                } else {
                    format!("t={} ", row.t)
                };
                let _ = writeln!(
                    out,
                    "    {}circle {} ({}, center {}, radius {}): T = {} oracle = {} defect {:.3e}",
                    t_note,
                    row.circle,
                    row.orientation,
                    row.center,
                    row.radius,
                    format_complex(Complex64::new(row.pairing_re, row.pairing_im)),
                    row.oracle,
                    row.defect
                );
            }
        }
        if let Some(fibers) = &check.fibers {
            for row in fibers {
                let note = match (&row.defect, &row.error) {
                    (Some(d), _) => format!("defect {:.3e}", d),
                    (None, Some(e)) => e.clone(),
                    (None, None) => String::new(),
                };
                let _ = writeln!(out, "    t={}: {}  {}", row.t, row.status, note);
            }
        }
    }
    let _ = writeln!(
        out,
        "result: {}",
        if report.pass { "PASS" } else { "FAIL" }
    );
    out
}
