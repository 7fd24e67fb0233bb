//! Phragmén–Lindelöf indicator estimation for one-variable interpolants.
//!
//! The indicator `h_φ(θ) = limsup_{r→∞} ln|φ(re^{iθ})|/r` measures the
//! exponential growth rate of `φ` along each ray of the closed right
//! half-plane. Two derived quantities drive the continuation:
//!
//! - the convergence radius `R = e^{−h_φ(0)}` of the interpolated series, and
//! - the sector half-angle `σ = max{h_φ(π/2), h_φ(−π/2)}`, admissible when
//!   `σ < π`.
//!
//! The limsup is approximated by the maximum of `ln|φ|/r` over the upper half
//! of a geometric radius grid (max-slope method), which is robust against
//! oscillatory `|φ|`; a through-origin regression variant is available for
//! comparison. The estimate samples only `|θ| ≤ π/2` and therefore cannot
//! verify that `φ` is actually holomorphic there — verdicts built on it are
//! conditional on that hypothesis.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::expr::InterpolantExpr;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndicatorError {
    #[error("indicator estimation requires a one-variable interpolant, got {0} variables")]
    NotOneVariable(usize),
    #[error("need samples >= 8 and r_max >= 10, got samples = {samples}, r_max = {r_max}")]
    BadParameters { samples: usize, r_max: f64 },
    #[error("theta grid must be strictly increasing within [-\u{3c0}/2, \u{3c0}/2]")]
    BadThetaGrid,
    #[error("estimate does not contain both boundary angles \u{b1}\u{3c0}/2")]
    MissingBoundaryAngles,
    #[error("sector angle must satisfy 0 <= \u{3c3} < \u{3c0}, got {0}")]
    BadSector(f64),
}

/// Sector half-angle `σ ∈ [0, π)`: the series continues to the complement of
/// `{re^{iθ} : |θ| ≤ σ}`, i.e. to arguments in `(σ, 2π−σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpec {
    sigma: f64,
}

impl SectorSpec {
    pub fn new(sigma: f64) -> Result<Self, IndicatorError> {
        if !(0.0..std::f64::consts::PI).contains(&sigma) {
            return Err(IndicatorError::BadSector(sigma));
        }
        Ok(SectorSpec { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// How the per-ray growth slope is extracted from the radius grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeMethod {
    /// Max of `ln|φ|/r` over the upper half of the grid (default).
    MaxSlope,
    /// Through-origin least-squares slope of `ln|φ|` against `r`.
    Regression,
}

/// Indicator samples `ĥ(θ)` on an angle grid. Rays on which φ was singular
/// carry the sentinel `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorEstimate {
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    pub radii_used: Vec<f64>,
    pub slope_method: SlopeMethod,
}

/// 65 equispaced angles on `[−π/2, π/2]`; the odd count places 0 and both
/// endpoints exactly on the grid.
pub fn default_theta_grid() -> Vec<f64> {
    let n = 65usize;
    let h = std::f64::consts::PI / (n - 1) as f64;
    (0..n)
        .map(|k| -std::f64::consts::FRAC_PI_2 + h * k as f64)
        .collect()
}

/// Estimate the indicator with the max-slope method.
pub fn estimate_indicator(
    phi: &InterpolantExpr,
    thetas: &[f64],
    r_max: f64,
    samples: usize,
) -> Result<IndicatorEstimate, IndicatorError> {
    estimate_indicator_with(phi, thetas, r_max, samples, SlopeMethod::MaxSlope)
}

pub fn estimate_indicator_with(
    phi: &InterpolantExpr,
    thetas: &[f64],
    r_max: f64,
    samples: usize,
    method: SlopeMethod,
) -> Result<IndicatorEstimate, IndicatorError> {
    if phi.nvars() != 1 {
        return Err(IndicatorError::NotOneVariable(phi.nvars()));
    }
    if samples < 8 || r_max < 10.0 {
        return Err(IndicatorError::BadParameters { samples, r_max });
    }
    let half_pi = std::f64::consts::FRAC_PI_2 + 1e-12;
    let increasing = thetas.windows(2).all(|w| w[0] < w[1]);
    if thetas.is_empty() || !increasing || thetas.iter().any(|t| t.abs() > half_pi) {
        return Err(IndicatorError::BadThetaGrid);
    }

    // Geometric grid r_max·2^{-j}, j = 0..=samples, largest first.
    let radii: Vec<f64> = (0..=samples)
        .map(|j| r_max / f64::powi(2.0, j as i32))
        .collect();

    let values: Vec<f64> = thetas
        .par_iter()
        .map(|&theta| ray_slope(phi, theta, &radii, samples, method))
        .collect();

    Ok(IndicatorEstimate {
        thetas: thetas.to_vec(),
        values,
        radii_used: radii,
        slope_method: method,
    })
}

fn ray_slope(
    phi: &InterpolantExpr,
    theta: f64,
    radii: &[f64],
    samples: usize,
    method: SlopeMethod,
) -> f64 {
    // Upper half of the grid: indices 0..=samples/2 (radii down to the
    // geometric midpoint of the grid).
    let upper = &radii[..=samples / 2];
    let mut slopes = Vec::with_capacity(upper.len());
    for &r in upper {
        match phi.eval(&[Complex64::from_polar(r, theta)]) {
            Ok(v) => slopes.push((r, v.norm().ln())),
            Err(_) => return f64::INFINITY, // singular ray: flag with the sentinel
        }
    }
    match method {
        SlopeMethod::MaxSlope => slopes
            .iter()
            .map(|&(r, ln_abs)| ln_abs / r)
            .fold(f64::NEG_INFINITY, f64::max),
        SlopeMethod::Regression => {
            let sxy: f64 = slopes.iter().map(|&(r, y)| r * y).sum();
            let sxx: f64 = slopes.iter().map(|&(r, _)| r * r).sum();
            sxy / sxx
        }
    }
}

/// Slice growth rate `ĥ(0)` of `φ` along the positive real axis of variable
/// `j` (0-based) with the other variables frozen at 0. Used to locate the
/// convergence polydisk.
pub(crate) fn h0_along_axis(phi: &InterpolantExpr, j: usize, r_max: f64, samples: usize) -> f64 {
    let radii: Vec<f64> = (0..=samples)
        .map(|k| r_max / f64::powi(2.0, k as i32))
        .collect();
    let upper = &radii[..=samples / 2];
    let mut best = f64::NEG_INFINITY;
    for &r in upper {
        match phi.eval_partial(&[j], &[Complex64::new(r, 0.0)]) {
            Ok(v) => best = best.max(v.norm().ln() / r),
            Err(_) => return f64::INFINITY,
        }
    }
    best
}

impl IndicatorEstimate {
    /// Value at a grid angle (within 1e-12), if present.
    pub fn value_at(&self, theta: f64) -> Option<f64> {
        self.thetas
            .iter()
            .position(|t| (t - theta).abs() < 1e-12)
            .map(|i| self.values[i])
    }

    /// All angle triples `α₁ < θ < α₂` (with `α₂ − α₁ < π`) violating
    /// trigonometric convexity by more than `tol`:
    /// `h(θ)·sin(α₂−α₁) ≤ h(α₁)·sin(α₂−θ) + h(α₂)·sin(θ−α₁) + tol`.
    /// Triples containing a singular-ray sentinel are skipped.
    pub fn trig_convexity_violations(&self, tol: f64) -> Vec<TrigConvexityViolation> {
        let n = self.thetas.len();
        let mut out = Vec::new();
        for i in 0..n {
            if !self.values[i].is_finite() {
                continue;
            }
            for j in (i + 1)..n {
                if !self.values[j].is_finite() {
                    continue;
                }
                for k in (j + 1)..n {
                    if !self.values[k].is_finite() {
                        continue;
                    }
                    let (a1, th, a2) = (self.thetas[i], self.thetas[j], self.thetas[k]);
                    if a2 - a1 >= std::f64::consts::PI {
                        continue;
                    }
                    let lhs = self.values[j] * (a2 - a1).sin();
                    let rhs = self.values[i] * (a2 - th).sin() + self.values[k] * (th - a1).sin();
                    if lhs > rhs + tol {
                        out.push(TrigConvexityViolation {
                            triple: (a1, th, a2),
                            excess: lhs - rhs,
                        });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigConvexityViolation {
    pub triple: (f64, f64, f64),
    pub excess: f64,
}

/// Bernstein radius `R = e^{−h_φ(0)}`.
pub fn radius_from_indicator(h0: f64) -> f64 {
    debug_assert!(h0.is_finite());
    (-h0).exp()
}

/// Outcome of the sector condition `max{ĥ(π/2), ĥ(−π/2)} = σ < π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectorVerdict {
    Admissible(SectorSpec),
    /// The boundary growth reaches or exceeds π; carries the offending value.
    Rejected {
        value: f64,
    },
}

/// Apply the sector condition to an estimate containing both boundary
/// angles. σ is clamped below at 0.
pub fn sector_from_boundary_growth(
    est: &IndicatorEstimate,
) -> Result<SectorVerdict, IndicatorError> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let plus = est
        .value_at(half_pi)
        .ok_or(IndicatorError::MissingBoundaryAngles)?;
    let minus = est
        .value_at(-half_pi)
        .ok_or(IndicatorError::MissingBoundaryAngles)?;
    let raw = plus.max(minus);
    if raw >= std::f64::consts::PI {
        return Ok(SectorVerdict::Rejected { value: raw });
    }
    Ok(SectorVerdict::Admissible(SectorSpec {
        sigma: raw.max(0.0),
    }))
}

/// Pointwise check of `ĥ(θ) ≤ σ·|sin θ| + tol` on the open interval
/// `|θ| < π/2` (the unit-radius continuation criterion).
#[derive(Debug, Clone, PartialEq)]
pub struct ArakelianReport {
    pub holds: bool,
    pub violations: Vec<ArakelianViolation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArakelianViolation {
    pub theta: f64,
    pub h: f64,
    pub bound: f64,
}

pub fn check_arakelian(est: &IndicatorEstimate, sector: SectorSpec, tol: f64) -> ArakelianReport {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut violations = Vec::new();
    for (&theta, &h) in est.thetas.iter().zip(&est.values) {
        if theta.abs() >= half_pi - 1e-12 {
            continue;
        }
        let bound = sector.sigma() * theta.sin().abs() + tol;
        if h > bound {
            violations.push(ArakelianViolation { theta, h, bound });
        }
    }
    ArakelianReport {
        holds: violations.is_empty(),
        violations,
    }
}
