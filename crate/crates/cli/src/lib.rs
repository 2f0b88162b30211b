//! Scenario-driven front end for the reciprocity toolkit: loads JSON
//! scenario files, dispatches exact and numeric checks, and emits
//! human-readable tables plus machine-readable reports.

// scenario and error types carry exact scalars; they are cold configuration
// data, not hot-path values
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod report;
pub mod runner;
pub mod scenario;

pub use report::{circles_csv, render_human, RunReport};
pub use runner::{convergence_study, run, ConvergenceOutcome, RunFailure, RunOptions, RunOutcome};
pub use scenario::{load_scenario, parse_scenario, Check, Scenario, ScenarioError};
