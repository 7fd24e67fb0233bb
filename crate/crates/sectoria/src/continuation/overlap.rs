//! The overlap oracle: inside the convergence polydisk the continued value
//! must agree with the plainly summed series. This is the master property
//! test of the whole pipeline — contour, kernel branch, polytope and boundary
//! assembly all have to be right for it to hold.

use num_complex::Complex64;

use crate::geometry::{contains_arg, Polytope};
use crate::indicator::h0_along_axis;

use super::{continue_nd, ContinuationError, ContinuationResult, Problem};

/// Safety factor on the geometric tail majorisation of the direct sum.
const DIRECT_TAIL_SAFETY: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapReport {
    pub z: Vec<Complex64>,
    pub continued: ContinuationResult,
    /// Direct truncated sum `Σ_{k ∈ [0, N]ⁿ} φ(k)·zᵏ`.
    pub direct: Complex64,
    /// Geometric bound on the discarded part of the direct sum.
    pub direct_tail_bound: f64,
    pub terms_per_axis: usize,
    pub discrepancy: f64,
}

impl OverlapReport {
    /// The invariant form: discrepancy within the combined error budgets.
    pub fn within_combined_bounds(&self) -> bool {
        self.discrepancy <= self.continued.quad_error + self.direct_tail_bound + 1e-12
    }
}

/// Compare the continued value against the truncated series at a point
/// strictly inside both the convergence polydisk and `Arg⁻¹(P°)`.
/// `n_terms` is the per-axis truncation index N; `quad_tol` the quadrature
/// target passed to the continuation.
pub fn verify_overlap(
    p: &Problem,
    poly: &Polytope,
    z: &[Complex64],
    n_terms: usize,
    quad_tol: f64,
) -> Result<OverlapReport, ContinuationError> {
    let n = p.dim();
    if z.len() != n {
        return Err(ContinuationError::PointDimension {
            expected: n,
            got: z.len(),
        });
    }

    // Strictly inside the per-variable convergence radii e^{−ĥⱼ(0)}.
    let mut rho_max = 0.0f64;
    for (j, zj) in z.iter().enumerate() {
        let h0 = h0_along_axis(p.phi(), j, 50.0, 32);
        let radius = (-h0).exp();
        let modulus = zj.norm();
        let strictly_inside = modulus < radius * (1.0 - 1e-9);
        if !strictly_inside {
            return Err(ContinuationError::OutsidePolydisk {
                index: j + 1,
                modulus,
                radius,
            });
        }
        rho_max = rho_max.max(modulus * h0.exp());
    }
    if rho_max >= 1.0 {
        return Err(ContinuationError::TailNotConvergent(rho_max));
    }

    let continued = continue_nd(p, poly, z, quad_tol)?;

    // Direct truncated sum over the box [0, N]^n, plus the outermost shell
    // (max index = N) in absolute value for the geometric tail bound.
    let powers: Vec<Vec<Complex64>> = z
        .iter()
        .map(|&zj| {
            let mut row = Vec::with_capacity(n_terms + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            row.push(acc);
            for _ in 0..n_terms {
                acc *= zj;
                row.push(acc);
            }
            row
        })
        .collect();

    let mut direct = Complex64::new(0.0, 0.0);
    let mut shell = 0.0f64;
    let mut k = vec![0usize; n];
    'outer: loop {
        let args: Vec<Complex64> = k.iter().map(|&kj| Complex64::new(kj as f64, 0.0)).collect();
        let mut term = p.phi().eval(&args)?;
        for j in 0..n {
            term *= powers[j][k[j]];
        }
        direct += term;
        if k.contains(&n_terms) {
            shell += term.norm();
        }
        for kj in k.iter_mut() {
            if *kj < n_terms {
                *kj += 1;
                continue 'outer;
            }
            *kj = 0;
        }
        break;
    }
    let direct_tail_bound = DIRECT_TAIL_SAFETY * shell * rho_max / (1.0 - rho_max);

    let discrepancy = (continued.value - direct).norm();
    Ok(OverlapReport {
        z: z.to_vec(),
        continued,
        direct,
        direct_tail_bound,
        terms_per_axis: n_terms,
        discrepancy,
    })
}

/// Points strictly inside both the polydisk and the polytope interior, for
/// `per_axis` samples per variable (their cartesian product). Radii sweep
/// 25–75% of the per-variable convergence radius; arguments swing around the
/// Chebyshev center within 40% of its radius.
pub fn auto_overlap_grid(
    p: &Problem,
    poly: &Polytope,
    per_axis: usize,
) -> Result<Vec<Vec<Complex64>>, ContinuationError> {
    let n = p.dim();
    let center = poly
        .interior_point
        .as_ref()
        .ok_or(ContinuationError::OutsideDomain)?;
    let swing = 0.4 * poly.chebyshev_radius;

    let mut per_var: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (j, &center_j) in center.iter().enumerate() {
        let h0 = h0_along_axis(p.phi(), j, 50.0, 32);
        let radius = (-h0).exp();
        let mut pts = Vec::with_capacity(per_axis);
        for i in 0..per_axis {
            let s = if per_axis == 1 {
                0.5
            } else {
                i as f64 / (per_axis - 1) as f64
            };
            let modulus = radius * (0.25 + 0.5 * s);
            let arg = center_j + swing * (2.0 * s - 1.0);
            pts.push(Complex64::from_polar(modulus, arg));
        }
        per_var.push(pts);
    }

    let mut grid = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let point: Vec<Complex64> = (0..n).map(|j| per_var[j][idx[j]]).collect();
        if contains_arg(poly, &point)? {
            grid.push(point);
        }
        for idx_j in idx.iter_mut() {
            *idx_j += 1;
            if *idx_j < per_axis {
                continue 'outer;
            }
            *idx_j = 0;
        }
        break;
    }
    Ok(grid)
}
