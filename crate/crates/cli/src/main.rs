use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use deligne_cli::{circles_csv, convergence_study, load_scenario, render_human, run, RunOptions};

#[derive(Debug, Parser)]
#[command(name = "deligne", version, about = "Reciprocity checks for factored rational functions: exact tame symbols and residues, circle pairings, and bordered-domain verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the checks declared in a scenario file.
    Verify {
        /// Path to a scenario JSON file.
        scenario: PathBuf,
        /// Override the scenario's sample count (power of two >= 16).
        #[arg(long)]
        samples: Option<usize>,
        /// Override the scenario's defect tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Write the machine-readable report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write per-circle pairing values as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Seed recorded in the report for reproducibility.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tabulate check defects over a grid of sample counts.
    Convergence {
        /// Path to a scenario JSON file with a deligne or tame check.
        scenario: PathBuf,
        /// Comma-separated sample counts, e.g. 256,1024,4096.
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<usize>,
        /// Write the defect table as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Seed recorded for reproducibility.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            scenario,
            samples,
            tol,
            report,
            csv,
            seed,
        } => {
            let name = scenario.display().to_string();
            let loaded = load_scenario(&scenario).map_err(|e| e.to_string())?;
            let options = RunOptions { samples, tol, seed };
            let outcome = run(&loaded, &name, &options).map_err(|e| e.to_string())?;
            print!("{}", render_human(&outcome.report));
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&outcome.report)
                    .expect("report serializes as JSON");
                fs::write(&path, json).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            if let Some(path) = csv {
                fs::write(&path, circles_csv(&outcome.report))
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(outcome.exit_code())
        }
        Command::Convergence {
            scenario,
            grid,
            csv,
            seed,
        } => {
            let loaded = load_scenario(&scenario).map_err(|e| e.to_string())?;
            let options = RunOptions {
                samples: None,
                tol: None,
                seed,
            };
            let outcome = convergence_study(&loaded, &grid, &options).map_err(|e| e.to_string())?;
            print!("{}", outcome.render_human());
            if let Some(path) = csv {
                fs::write(&path, outcome.csv())
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(0)
        }
    }
}
