//! Problem-file schema (versioned JSON) and conversion into library types.

use serde::Deserialize;

use sectoria::continuation::Problem;
use sectoria::expr;
use sectoria::geometry::{Majorant, MajorantTerm};
use sectoria::indicator::SectorSpec;
use sectoria::kernel::ContourSpec;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    pub n: usize,
    pub phi: String,
    pub majorant: MajorantFile,
    #[serde(default)]
    pub contour: ContourFile,
    /// One-dimensional shortcut: a known sector half-angle.
    #[serde(default)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MajorantFile {
    pub terms: Vec<TermFile>,
    pub delta: f64,
    pub b: f64,
    #[serde(rename = "C")]
    pub big_c: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub eps: i8,
    pub a: Vec<f64>,
    #[serde(default)]
    pub a0: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContourFile {
    pub indent_radius: Option<f64>,
    pub truncation: Option<f64>,
    pub nodes_per_unit: Option<usize>,
    pub pole_exclusion: Option<f64>,
}

/// Parsed and validated problem, plus the optional sector shortcut.
pub struct LoadedProblem {
    pub problem: Problem,
    pub sigma: Option<SectorSpec>,
}

pub fn load(path: &str) -> Result<LoadedProblem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
    let file: ProblemFile = serde_json::from_str(&text).map_err(|e| {
        CliError::input(format!(
            "{path}: line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    if file.version != SCHEMA_VERSION {
        return Err(CliError::input(format!(
            "{path}: unsupported schema version {} (expected {SCHEMA_VERSION})",
            file.version
        )));
    }
    if file.n == 0 {
        return Err(CliError::input(format!("{path}: field `n` must be >= 1")));
    }

    let phi = expr::parse(&file.phi, file.n)
        .map_err(|e| CliError::input(format!("{path}: field `phi`: {e}")))?;

    let terms = file
        .majorant
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            MajorantTerm::new(t.eps, t.a.clone(), t.a0)
                .map_err(|e| CliError::input(format!("{path}: majorant term {i}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let majorant = Majorant::new(
        terms,
        file.n,
        file.majorant.delta,
        file.majorant.b,
        file.majorant.big_c,
    )
    .map_err(|e| CliError::input(format!("{path}: field `majorant`: {e}")))?;

    let defaults = ContourSpec::for_delta(file.majorant.delta);
    let spec = ContourSpec::new(
        file.contour.indent_radius.unwrap_or(defaults.indent_radius),
        file.contour.truncation.unwrap_or(defaults.truncation),
        file.contour
            .nodes_per_unit
            .unwrap_or(defaults.nodes_per_unit),
        file.contour
            .pole_exclusion
            .unwrap_or(defaults.pole_exclusion),
    )
    .map_err(|e| CliError::input(format!("{path}: field `contour`: {e}")))?;

    let sigma = match file.sigma {
        Some(s) => {
            if file.n != 1 {
                return Err(CliError::input(format!(
                    "{path}: field `sigma` is only meaningful for n = 1"
                )));
            }
            Some(
                SectorSpec::new(s)
                    .map_err(|e| CliError::input(format!("{path}: field `sigma`: {e}")))?,
            )
        }
        None => None,
    };

    let problem =
        Problem::new(phi, majorant, spec).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    Ok(LoadedProblem { problem, sigma })
}
