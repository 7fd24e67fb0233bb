//! Command-line front end: problem files in, deterministic CSV/JSON out.
//!
//! Exit codes: 0 ok, 2 input error, 3 empty domain, 4 hypothesis failure,
//! 5 numerical failure.

mod commands;
mod format;
mod problem;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn hypothesis(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        CliError {
            code: 5,
            message: message.into(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sectoria",
    version,
    about = "Analytic continuation of power series into sectorial domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the continuation domain polytope as JSON (exit 3 if its interior is empty)
    Sector {
        /// Problem JSON file
        problem: String,
    },
    /// Estimate the indicator h(theta) on 65 rays; CSV plus a sigma/R summary line
    Indicator {
        problem: String,
        /// Largest ray radius of the geometric grid
        #[arg(long = "rmax", default_value_t = 50.0)]
        r_max: f64,
        /// Number of geometric radius-grid halvings
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// Continue the series at points read from a CSV (columns re_1,im_1,...)
    Continue {
        problem: String,
        points: String,
        /// Target absolute error per point
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Skip the growth-hypothesis checks
        #[arg(long)]
        force: bool,
    },
    /// Check continued values against direct sums on an auto-generated overlap grid
    Verify {
        problem: String,
        /// Grid points per axis (default: 9 for n = 1, 3 otherwise)
        #[arg(long, default_value_t = 0)]
        grid: usize,
        /// Allowed discrepancy per point
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Direct-sum truncation index per axis
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Compare a finite-contour residue integral with the direct partial sum
    #[command(name = "residue-check")]
    ResidueCheck {
        problem: String,
        /// Partial-sum orders, comma-separated (one per variable)
        #[arg(long)]
        m: String,
        /// Evaluation point, comma-separated re,im pairs (2n numbers)
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Allowed relative error
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SECTORIA_THREADS") {
        match threads.parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid SECTORIA_THREADS value `{threads}`"),
        }
    }

    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sector { problem } => commands::sector(&problem),
        Command::Indicator {
            problem,
            r_max,
            samples,
        } => commands::indicator(&problem, r_max, samples),
        Command::Continue {
            problem,
            points,
            tol,
            force,
        } => commands::continue_points(&problem, &points, tol, force),
        Command::Verify {
            problem,
            grid,
            tol,
            terms,
        } => commands::verify(&problem, grid, tol, terms),
        Command::ResidueCheck { problem, m, z, tol } => {
            commands::residue_check(&problem, &m, &z, tol)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
