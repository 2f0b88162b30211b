//! Scenario files: JSON descriptions of functions, domains, families, and
//! the checks to run against them.
//!
//! All geometric literals are exact-rational strings (`"1/2"`, never a
//! float); expressions use the factored grammar. When a family with
//! `"substitute": true` is present, scalars may carry an affine `t` term.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use deligne_core::bordered::{
    parse_affine_rational, parse_affine_scalar, parse_scheduled, AffineRational, AffineScalar,
    FiberError, ScheduledCircle, ScheduledDomain, ScheduledFunction,
};
use deligne_core::exact::{
    parse_rational, parse_scalar, parse_signed_rational, GaussianRational, ParseError, SpherePoint,
};
use deligne_core::BigRational;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid scenario JSON: {source}")]
    Json { source: serde_json::Error },
    #[error("function {name}: {source}")]
    Expression { name: String, source: ParseError },
    #[error("{field}: {source}")]
    Scalar { field: String, source: ParseError },
    #[error("unknown function {name}")]
    UnknownFunction { name: String },
    #[error("domain required for {check} check")]
    MissingDomain { check: &'static str },
    #[error("family with a t_grid required for sweep check")]
    MissingFamily,
    #[error("t_grid must not be empty")]
    EmptyGrid,
    #[error("function {name} depends on t; only sweep checks accept schedules")]
    TDependentFunction { name: String },
    #[error("domain depends on t; only sweep checks accept domain schedules")]
    TDependentDomain,
    #[error("numeric.samples = {n} is not a power of two >= 16")]
    InvalidSamples { n: usize },
    #[error("numeric.tol {value:?} is not a positive number")]
    InvalidTolerance { value: String },
    #[error("domain invalid at t = {t}: {source}")]
    Geometry { t: String, source: FiberError },
}

/// One resolved check, with function references validated.
#[derive(Clone, Debug)]
pub enum Check {
    ResidueSum {
        f: String,
    },
    Weil {
        f: String,
        g: String,
    },
    Deligne {
        f: String,
        g: String,
    },
    Sweep {
        f: String,
        g: String,
    },
    Tame {
        f: String,
        g: String,
        at: SpherePoint,
        expect: Option<GaussianRational>,
    },
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::ResidueSum { .. } => "residue_sum",
            Check::Weil { .. } => "weil",
            Check::Deligne { .. } => "deligne",
            Check::Sweep { .. } => "sweep",
            Check::Tame { .. } => "tame",
        }
    }

    pub fn function_names(&self) -> Vec<&str> {
        match self {
            Check::ResidueSum { f } => vec![f],
            Check::Weil { f, g } | Check::Deligne { f, g } | Check::Sweep { f, g } => {
                vec![f, g]
            }
            Check::Tame { f, g, .. } => vec![f, g],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NumericSettings {
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for NumericSettings {
    fn default() -> Self {
        Self {
            samples: deligne_core::loops::DEFAULT_SAMPLES,
            tol: deligne_core::loops::DEFAULT_TOLERANCE,
            seed: 0,
        }
    }
}

/// A fully validated scenario: expressions parsed, references resolved,
/// geometry checked exactly at every grid value.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub functions: BTreeMap<String, ScheduledFunction>,
    pub domain: Option<ScheduledDomain>,
    pub grid: Option<Vec<BigRational>>,
    pub checks: Vec<Check>,
    pub numeric: NumericSettings,
}

impl Scenario {
    pub fn function(&self, name: &str) -> &ScheduledFunction {
        &self.functions[name]
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    functions: BTreeMap<String, String>,
    #[serde(default)]
    domain: Option<DomainFile>,
    #[serde(default)]
    family: Option<FamilyFile>,
    checks: Vec<CheckFile>,
    #[serde(default)]
    numeric: Option<NumericFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainFile {
    outer: CircleFile,
    #[serde(default)]
    holes: Vec<CircleFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircleFile {
    center: String,
    radius: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    t_grid: Vec<String>,
    #[serde(default)]
    substitute: bool,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum CheckFile {
    ResidueSum {
        f: String,
    },
    Weil {
        f: String,
        g: String,
    },
    Deligne {
        f: String,
        g: String,
    },
    Sweep {
        f: String,
        g: String,
    },
    Tame {
        f: String,
        g: String,
        at: String,
        #[serde(default)]
        expect: Option<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NumericFile {
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    tol: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, ScenarioError> {
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|source| ScenarioError::Json { source })?;
    let substitute = file.family.as_ref().is_some_and(|f| f.substitute);

    let mut functions = BTreeMap::new();
    for (name, expression) in &file.functions {
        let parsed = if substitute {
            parse_scheduled(expression)
        } else {
            parse_rational(expression).map(|f| ScheduledFunction::from_rational(&f))
        }
        .map_err(|source| ScenarioError::Expression {
            name: name.clone(),
            source,
        })?;
        functions.insert(name.clone(), parsed);
    }

    let domain = match &file.domain {
        Some(spec) => Some(ScheduledDomain {
            outer: parse_circle(&spec.outer, "domain.outer", substitute)?,
            holes: spec
                .holes
                .iter()
                .enumerate()
                .map(|(i, c)| parse_circle(c, &format!("domain.holes[{i}]"), substitute))
                .collect::<Result<Vec<_>, _>>()?,
        }),
        None => None,
    };

    let grid = match &file.family {
        Some(family) => {
            if family.t_grid.is_empty() {
                return Err(ScenarioError::EmptyGrid);
            }
            Some(
                family
                    .t_grid
                    .iter()
                    .enumerate()
                    .map(|(i, value)| {
                        parse_signed_rational(value).map_err(|source| ScenarioError::Scalar {
                            field: format!("family.t_grid[{i}]"),
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
        None => None,
    };

    let mut checks = Vec::new();
    for check in &file.checks {
        checks.push(resolve_check(check, &functions)?);
    }

    // structural requirements
    for check in &checks {
        match check {
            Check::Deligne { .. } if domain.is_none() => {
                return Err(ScenarioError::MissingDomain { check: "deligne" })
            }
            Check::Sweep { .. } => {
                if domain.is_none() {
                    return Err(ScenarioError::MissingDomain { check: "sweep" });
                }
                if grid.is_none() {
                    return Err(ScenarioError::MissingFamily);
                }
            }
            _ => {}
        }
        // only sweeps may consume schedules
        if !matches!(check, Check::Sweep { .. }) {
            for name in check.function_names() {
                if functions[name].depends_on_t() {
                    return Err(ScenarioError::TDependentFunction {
                        name: name.to_string(),
                    });
                }
            }
            if matches!(check, Check::Deligne { .. }) {
                if let Some(d) = &domain {
                    if domain_depends_on_t(d) {
                        return Err(ScenarioError::TDependentDomain);
                    }
                }
            }
        }
    }

    let numeric = resolve_numeric(file.numeric.as_ref())?;

    // exact geometry validation at every relevant grid value
    if let Some(d) = &domain {
        let zero = BigRational::from_integer(0.into());
        let grid_slice: Vec<BigRational> = grid.clone().unwrap_or_else(|| vec![zero]);
        for t in &grid_slice {
            d.at(t).map_err(|source| ScenarioError::Geometry {
                t: t.to_string(),
                source,
            })?;
        }
    }

    Ok(Scenario {
        functions,
        domain,
        grid,
        checks,
        numeric,
    })
}

fn domain_depends_on_t(domain: &ScheduledDomain) -> bool {
    let circle_moves = |c: &ScheduledCircle| !c.center.is_constant() || !c.radius.is_constant();
    circle_moves(&domain.outer) || domain.holes.iter().any(circle_moves)
}

fn parse_circle(
    spec: &CircleFile,
    field: &str,
    substitute: bool,
) -> Result<ScheduledCircle, ScenarioError> {
    let center = if substitute {
        parse_affine_scalar(&spec.center)
    } else {
        parse_scalar(&spec.center).map(AffineScalar::constant)
    }
    .map_err(|source| ScenarioError::Scalar {
        field: format!("{field}.center"),
        source,
    })?;
    let radius = if substitute {
        parse_affine_rational(&spec.radius)
    } else {
        parse_signed_rational(&spec.radius).map(AffineRational::constant)
    }
    .map_err(|source| ScenarioError::Scalar {
        field: format!("{field}.radius"),
        source,
    })?;
    Ok(ScheduledCircle { center, radius })
}

fn resolve_check(
    check: &CheckFile,
    functions: &BTreeMap<String, ScheduledFunction>,
) -> Result<Check, ScenarioError> {
    let resolve = |name: &str| -> Result<String, ScenarioError> {
        if functions.contains_key(name) {
            Ok(name.to_string())
        } else {
            Err(ScenarioError::UnknownFunction {
                name: name.to_string(),
            })
        }
    };
    Ok(match check {
        CheckFile::ResidueSum { f } => Check::ResidueSum { f: resolve(f)? },
        CheckFile::Weil { f, g } => Check::Weil {
            f: resolve(f)?,
            g: resolve(g)?,
        },
        CheckFile::Deligne { f, g } => Check::Deligne {
            f: resolve(f)?,
            g: resolve(g)?,
        },
        CheckFile::Sweep { f, g } => Check::Sweep {
            f: resolve(f)?,
            g: resolve(g)?,
        },
        CheckFile::Tame { f, g, at, expect } => {
            let point = if at.trim() == "inf" {
                SpherePoint::Infinity
            } else {
                SpherePoint::Finite(parse_scalar(at).map_err(|source| ScenarioError::Scalar {
                    field: "tame.at".to_string(),
                    source,
                })?)
            };
            let expect = expect
                .as_ref()
                .map(|text| {
                    parse_scalar(text).map_err(|source| ScenarioError::Scalar {
                        field: "tame.expect".to_string(),
                        source,
                    })
                })
                .transpose()?;
            Check::Tame {
                f: resolve(f)?,
                g: resolve(g)?,
                at: point,
                expect,
            }
        }
    })
}

fn resolve_numeric(file: Option<&NumericFile>) -> Result<NumericSettings, ScenarioError> {
    let mut numeric = NumericSettings::default();
    if let Some(spec) = file {
        if let Some(n) = spec.samples {
            if n < 16 || !n.is_power_of_two() {
                return Err(ScenarioError::InvalidSamples { n });
            }
            numeric.samples = n;
        }
        if let Some(tol) = &spec.tol {
            let value: f64 = tol
                .parse()
                .map_err(|_| ScenarioError::InvalidTolerance { value: tol.clone() })?;
            if !(value.is_finite() && value > 0.0) {
                return Err(ScenarioError::InvalidTolerance { value: tol.clone() });
            }
            numeric.tol = value;
        }
        if let Some(seed) = spec.seed {
            numeric.seed = seed;
        }
    }
    Ok(numeric)
}
