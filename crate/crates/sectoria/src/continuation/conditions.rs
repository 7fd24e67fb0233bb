//! Numerical verification of the growth hypotheses on φ.
//!
//! Condition 1 bounds `log|φ|` by the majorant g̃ on the imaginary subspace;
//! condition 2 bounds it by `Σⱼ (π−δ)|ηⱼ| + b·ξⱼ + C` on the closed right
//! poly-half-plane. Both are verified by sampling: a seeded uniform cloud
//! plus deterministic axis/ray sweeps with geometrically spaced radii, so
//! violations along coordinate directions cannot hide between random points.
//! The constants are user-supplied and only ever verified, never inferred.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{build_fan, eval_g_tilde};

use super::{ContinuationError, Problem};

/// Violations within this tolerance still pass (floating-point headroom on
/// exact-equality majorants).
pub const CONDITION_TOL: f64 = 1e-9;

const BOX_HALF_WIDTH: f64 = 50.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    /// 1 or 2.
    pub condition: u8,
    pub samples_checked: usize,
    /// Max of `log|φ| − bound` over all samples (may be −∞ if φ vanishes).
    pub max_violation: f64,
    /// Sample attaining the max violation.
    pub worst: Vec<Complex64>,
    pub pass: bool,
}

/// Condition 1: `log|φ(iη)| ≤ g̃(η)` on the imaginary subspace.
pub fn check_condition_1(
    p: &Problem,
    samples: usize,
) -> Result<ConditionReport, ContinuationError> {
    if samples < 100 {
        return Err(ContinuationError::TooFewSamples {
            need: 100,
            got: samples,
        });
    }
    let n = p.dim();
    let mut etas = sweep_directions(p, n);
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0D1_7101);
    for _ in 0..samples {
        etas.push(
            (0..n)
                .map(|_| rng.gen_range(-BOX_HALF_WIDTH..BOX_HALF_WIDTH))
                .collect(),
        );
    }

    let mut max_violation = f64::NEG_INFINITY;
    let mut worst = vec![Complex64::new(0.0, 0.0); n];
    for eta in &etas {
        let zeta: Vec<Complex64> = eta.iter().map(|&y| Complex64::new(0.0, y)).collect();
        let v = p
            .phi()
            .eval(&zeta)
            .map_err(|source| ContinuationError::SingularSample {
                location: zeta.clone(),
                source,
            })?;
        let violation = v.norm().ln() - eval_g_tilde(p.majorant(), eta);
        if violation > max_violation {
            max_violation = violation;
            worst = zeta;
        }
    }
    Ok(ConditionReport {
        condition: 1,
        samples_checked: etas.len(),
        max_violation,
        worst,
        pass: max_violation <= CONDITION_TOL,
    })
}

/// Condition 2: `log|φ(ξ+iη)| ≤ Σⱼ (π−δ)|ηⱼ| + b·ξⱼ + C` for ξ ∈ ℝ₊ⁿ.
pub fn check_condition_2(
    p: &Problem,
    samples: usize,
) -> Result<ConditionReport, ContinuationError> {
    if samples < 100 {
        return Err(ContinuationError::TooFewSamples {
            need: 100,
            got: samples,
        });
    }
    let n = p.dim();
    let m = p.majorant();
    let (delta, b, big_c) = (m.delta(), m.b(), m.big_c());

    let mut points: Vec<Vec<Complex64>> = Vec::new();
    // Axis sweeps: pure real growth along each ξ axis, and pure imaginary.
    for k in 0..n {
        for j in 0..24 {
            let r = BOX_HALF_WIDTH / f64::powi(2.0, j);
            let mut zeta = vec![Complex64::new(0.0, 0.0); n];
            zeta[k] = Complex64::new(r, 0.0);
            points.push(zeta.clone());
            zeta[k] = Complex64::new(0.0, r);
            points.push(zeta.clone());
            zeta[k] = Complex64::new(0.0, -r);
            points.push(zeta);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0D2_7102);
    for _ in 0..samples {
        points.push(
            (0..n)
                .map(|_| {
                    Complex64::new(
                        rng.gen_range(0.0..BOX_HALF_WIDTH),
                        rng.gen_range(-BOX_HALF_WIDTH..BOX_HALF_WIDTH),
                    )
                })
                .collect(),
        );
    }

    let mut max_violation = f64::NEG_INFINITY;
    let mut worst = vec![Complex64::new(0.0, 0.0); n];
    for zeta in &points {
        let v = p
            .phi()
            .eval(zeta)
            .map_err(|source| ContinuationError::SingularSample {
                location: zeta.clone(),
                source,
            })?;
        let bound: f64 = zeta
            .iter()
            .map(|c| (std::f64::consts::PI - delta) * c.im.abs() + b * c.re)
            .sum::<f64>()
            + big_c;
        let violation = v.norm().ln() - bound;
        if violation > max_violation {
            max_violation = violation;
            worst = zeta.clone();
        }
    }
    Ok(ConditionReport {
        condition: 2,
        samples_checked: points.len(),
        max_violation,
        worst,
        pass: max_violation <= CONDITION_TOL,
    })
}

/// Deterministic η sweep: coordinate directions, fan rays, and the diagonal,
/// each at geometric radii up to the box half-width.
fn sweep_directions(p: &Problem, n: usize) -> Vec<Vec<f64>> {
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        dirs.push(e.clone());
        e[k] = -1.0;
        dirs.push(e);
    }
    if let Ok(fan) = build_fan(p.majorant()) {
        dirs.extend(fan.rays.iter().cloned());
    }
    let diag = vec![1.0 / (n as f64).sqrt(); n];
    dirs.push(diag);

    let mut out = Vec::new();
    for dir in dirs {
        for j in 0..24 {
            let r = BOX_HALF_WIDTH / f64::powi(2.0, j);
            out.push(dir.iter().map(|d| d * r).collect());
        }
    }
    out
}
