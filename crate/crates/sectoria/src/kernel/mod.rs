//! The Cauchy-type kernels `g(ζ,z) = z^ζ/(e^{2πiζ}−1)` and their n-fold
//! product, with the branch of `z^ζ` fixed by `arg z ∈ (0, 2π)`.
//!
//! The kernel has simple poles at the integers; residues there produce the
//! series terms `φ(n)·zⁿ`, which is why integrating `φ·g` over contours that
//! enclose `1..m` recovers partial sums ([`residue_partial_sum_1d`]) and
//! integrating over the deformed imaginary axis recovers the full continued
//! sum ([`crate::continuation`]).
//!
//! The branch matters: the continuation domain lives in argument coordinates
//! `(0, 2π)`, so positive real `z` (argument 0) sits on the cut and is
//! rejected by [`BranchedPower::new`]. Finite-contour residue checks may use
//! [`BranchedPower::with_arg`] to close that gap with `arg z = 2π`, which
//! leaves every integer-point residue unchanged.

pub(crate) mod contour;
mod residue;

pub use contour::{boundary_gm_pieces, gamma1_pieces, ContourPiece, ContourSpec};
pub use residue::{
    arc_magnitudes, residue_partial_sum_1d, residue_partial_sum_nd, ResiduePartialSum,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::EvalError;
use crate::geometry::arg_0_2pi;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("z must be nonzero")]
    ZeroBase,
    #[error("arg z = 0 is not in (0, 2\u{3c0}); the branch excludes positive reals")]
    BranchCut,
    #[error("arg {arg} does not match the direction of z (expected {expected} mod 2\u{3c0})")]
    ArgMismatch { arg: f64, expected: f64 },
    #[error("{zeta} is within {dist} of the integer pole lattice (exclusion {exclusion}){}",
            component.map(|j| format!(" in component {j}")).unwrap_or_default())]
    PoleProximity {
        zeta: Complex64,
        dist: f64,
        exclusion: f64,
        component: Option<usize>,
    },
    #[error("sample {zeta} violates Re \u{3b6} >= 0")]
    LeftHalfPlane { zeta: Complex64 },
    #[error("interpolant singular on the contour: {0}")]
    Interpolant(#[from] EvalError),
    #[error("quadrature did not converge: error estimate {estimate:.3e} for value of magnitude {magnitude:.3e}")]
    QuadratureNonConvergence { estimate: f64, magnitude: f64 },
    #[error("invalid contour spec: {0}")]
    InvalidSpec(String),
}

/// Default pole-exclusion radius around each integer.
pub const DEFAULT_POLE_EXCLUSION: f64 = 0.125;

/// A nonzero `z` together with the branch of its logarithm used in `z^ζ`.
///
/// Invariants: `exp(log_z) = z` to machine precision and `Im(log_z) ∈ (0, 2π]`
/// (the standard constructor stays in the open interval; only
/// [`BranchedPower::with_arg`] can produce 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedPower {
    z: Complex64,
    log_z: Complex64,
}

impl BranchedPower {
    /// Branch with `arg z ∈ (0, 2π)`; rejects 0 and positive reals.
    pub fn new(z: Complex64) -> Result<Self, KernelError> {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(KernelError::ZeroBase);
        }
        if z.im == 0.0 && z.re > 0.0 {
            return Err(KernelError::BranchCut);
        }
        Ok(BranchedPower {
            z,
            log_z: Complex64::new(z.norm().ln(), arg_0_2pi(z)),
        })
    }

    /// Explicit argument choice in `(0, 2π]`; must agree with the direction
    /// of `z` up to full turns. Positive real `z` with `arg = 2π` keeps the
    /// residue identity intact and is accepted here.
    pub fn with_arg(z: Complex64, arg: f64) -> Result<Self, KernelError> {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(KernelError::ZeroBase);
        }
        let expected = arg_0_2pi(z);
        let two_pi = 2.0 * std::f64::consts::PI;
        if !(arg > 0.0 && arg <= two_pi) || ((arg - expected) % two_pi).abs() > 1e-9 {
            return Err(KernelError::ArgMismatch { arg, expected });
        }
        Ok(BranchedPower {
            z,
            log_z: Complex64::new(z.norm().ln(), arg),
        })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn log_z(&self) -> Complex64 {
        self.log_z
    }

    /// `z^ζ = exp(ζ·log z)` on this branch.
    pub fn pow(&self, zeta: Complex64) -> Complex64 {
        (zeta * self.log_z).exp()
    }
}

/// Distance from `ζ` to the integer lattice on the real axis.
pub fn dist_to_integers(zeta: Complex64) -> f64 {
    let nearest = zeta.re.round();
    ((zeta.re - nearest).powi(2) + zeta.im * zeta.im).sqrt()
}

/// `g(ζ, z) = z^ζ/(e^{2πiζ} − 1)`, guarded by the pole-exclusion radius.
///
/// For `Im ζ < 0` the denominator grows like `e^{2π|Im ζ|}`; the evaluation
/// is rearranged as `exp(ζ(log z − 2πi))/(1 − e^{−2πiζ})` so neither factor
/// overflows on long lower legs.
pub fn kernel_1d(
    zeta: Complex64,
    bp: &BranchedPower,
    pole_exclusion: f64,
) -> Result<Complex64, KernelError> {
    let dist = dist_to_integers(zeta);
    if dist < pole_exclusion {
        return Err(KernelError::PoleProximity {
            zeta,
            dist,
            exclusion: pole_exclusion,
            component: None,
        });
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    if zeta.im >= 0.0 {
        let den = (two_pi_i * zeta).exp() - 1.0;
        Ok((zeta * bp.log_z).exp() / den)
    } else {
        let den = Complex64::new(1.0, 0.0) - (-two_pi_i * zeta).exp();
        Ok((zeta * (bp.log_z - two_pi_i)).exp() / den)
    }
}

/// `h(ζ, z) = Πⱼ g(ζⱼ, zⱼ)`; pole errors name the offending component
/// (1-based).
pub fn kernel_nd(
    zeta: &[Complex64],
    bps: &[BranchedPower],
    pole_exclusion: f64,
) -> Result<Complex64, KernelError> {
    debug_assert_eq!(zeta.len(), bps.len());
    let mut acc = Complex64::new(1.0, 0.0);
    for (j, (zj, bp)) in zeta.iter().zip(bps).enumerate() {
        acc *= kernel_1d(*zj, bp, pole_exclusion).map_err(|e| match e {
            KernelError::PoleProximity {
                zeta,
                dist,
                exclusion,
                ..
            } => KernelError::PoleProximity {
                zeta,
                dist,
                exclusion,
                component: Some(j + 1),
            },
            other => other,
        })?;
    }
    Ok(acc)
}

/// Outcome of scanning `C(ζ) = e^{π(|Im ζ|−Im ζ)} / |e^{2πiζ}−1|` over sample
/// points: the smallest constant making the kernel lower bound hold on all of
/// them.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBoundReport {
    pub c_max: f64,
    pub worst_sample: Complex64,
    pub samples_checked: usize,
}

impl KernelBoundReport {
    /// Finite and within the documented cap for pole exclusion 1/8.
    pub fn within_cap(&self) -> bool {
        self.c_max.is_finite() && self.c_max <= KERNEL_BOUND_CAP
    }
}

/// Documented cap on the lower-bound constant at pole exclusion 1/8.
pub const KERNEL_BOUND_CAP: f64 = 10.0;

/// Verify `|e^{2πiζ} − 1| > e^{π(|Im ζ|−Im ζ)}/C` over the samples and report
/// the smallest admissible `C`. Preconditions per sample: `Re ζ ≥ 0` and
/// distance ≥ `pole_exclusion` from the integer lattice.
pub fn check_kernel_lower_bound(
    samples: &[Complex64],
    pole_exclusion: f64,
) -> Result<KernelBoundReport, KernelError> {
    let mut c_max = 0.0f64;
    let mut worst = Complex64::new(0.0, 0.0);
    for &zeta in samples {
        if zeta.re < 0.0 {
            return Err(KernelError::LeftHalfPlane { zeta });
        }
        let dist = dist_to_integers(zeta);
        if dist < pole_exclusion {
            return Err(KernelError::PoleProximity {
                zeta,
                dist,
                exclusion: pole_exclusion,
                component: None,
            });
        }
        // log C(ζ) = π(|η|−η) − log|e^{2πiζ}−1|, evaluated in log space so
        // large |η| cannot overflow.
        let eta = zeta.im;
        let log_numerator = std::f64::consts::PI * (eta.abs() - eta);
        let log_denominator = log_abs_kernel_denominator(zeta);
        let log_c = log_numerator - log_denominator;
        if log_c > c_max.ln() {
            c_max = log_c.exp();
            worst = zeta;
        }
    }
    Ok(KernelBoundReport {
        c_max,
        worst_sample: worst,
        samples_checked: samples.len(),
    })
}

/// `log |e^{2πiζ} − 1|`, stable for large `|Im ζ|` in either direction.
pub fn log_abs_kernel_denominator(zeta: Complex64) -> f64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    if zeta.im >= 0.0 {
        ((two_pi_i * zeta).exp() - 1.0).norm().ln()
    } else {
        // e^{2πiζ} − 1 = e^{2πiζ}(1 − e^{−2πiζ}); |e^{2πiζ}| = e^{−2πη}.
        -2.0 * std::f64::consts::PI * zeta.im
            + (Complex64::new(1.0, 0.0) - (-two_pi_i * zeta).exp())
                .norm()
                .ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn worked_kernel_value() {
        // ζ = 1/2, z = −1 (log z = iπ): e^{iπ/2}/(e^{iπ}−1) = i/(−2) = −i/2.
        let bp = BranchedPower::new(Complex64::new(-1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(bp.log_z().im, PI, epsilon = 1e-15);
        let v = kernel_1d(Complex64::new(0.5, 0.0), &bp, 0.125).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, -0.5, epsilon = 1e-15);
        // Branch consistency from the worked example: kernel·i is real.
        assert_abs_diff_eq!((v * Complex64::new(0.0, 1.0)).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn positive_real_z_is_on_the_cut() {
        assert_eq!(
            BranchedPower::new(Complex64::new(1.0, 0.0)).unwrap_err(),
            KernelError::BranchCut
        );
        // ...but the closure constructor admits it with arg 2π.
        let bp = BranchedPower::with_arg(Complex64::new(0.5, 0.0), 2.0 * PI).unwrap();
        assert_abs_diff_eq!(bp.pow(Complex64::new(2.0, 0.0)).re, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(bp.pow(Complex64::new(2.0, 0.0)).im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn integer_zeta_is_a_pole() {
        let bp = BranchedPower::new(Complex64::new(-1.0, 0.0)).unwrap();
        assert!(matches!(
            kernel_1d(Complex64::new(2.0, 0.0), &bp, 0.125),
            Err(KernelError::PoleProximity { .. })
        ));
    }

    #[test]
    fn product_kernel_matches_square_and_reports_component() {
        let bp = BranchedPower::new(Complex64::new(-1.0, 0.0)).unwrap();
        let zeta = [Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)];
        let v = kernel_nd(&zeta, &[bp, bp], 0.125).unwrap();
        assert_abs_diff_eq!(v.re, -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);

        let bad = [Complex64::new(0.5, 0.0), Complex64::new(3.0, 0.0)];
        match kernel_nd(&bad, &[bp, bp], 0.125).unwrap_err() {
            KernelError::PoleProximity { component, .. } => assert_eq!(component, Some(2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_factor_product_reduces_to_kernel_1d() {
        let bp = BranchedPower::new(Complex64::new(0.3, 0.7)).unwrap();
        let pts = [
            Complex64::new(0.5, 0.0),
            Complex64::new(0.4, 2.0),
            Complex64::new(3.5, -1.0),
            Complex64::new(0.0, 5.5),
            Complex64::new(1.5, -20.0),
            Complex64::new(10.4, 0.2),
            Complex64::new(0.6, 0.3),
            Complex64::new(2.5, 2.5),
            Complex64::new(7.5, -0.4),
            Complex64::new(0.2, -3.0),
        ];
        for zeta in pts {
            let a = kernel_1d(zeta, &bp, 0.125).unwrap();
            let b = kernel_nd(&[zeta], &[bp], 0.125).unwrap();
            assert!((a - b).norm() <= 1e-15 * a.norm());
        }
    }

    #[test]
    fn stable_evaluation_deep_on_the_lower_leg() {
        // η = −80: naive e^{2πiζ} would be e^{160π} ≈ e^{502}; the rearranged
        // form must stay finite and match the analytic size e^{η(arg z − 2π)}.
        let bp = BranchedPower::new(Complex64::new(-1.0, 0.0)).unwrap();
        let v = kernel_1d(Complex64::new(0.0, -80.0), &bp, 0.125).unwrap();
        assert!(v.norm().is_finite());
        // |g(iη, z)| = e^{−ηα}/|e^{−2πη}−1| ≈ e^{η(2π−α)} for η ≪ 0.
        let expected_ln = -80.0 * (2.0 * PI - PI);
        assert_abs_diff_eq!(v.norm().ln(), expected_ln, epsilon = 1e-9);
    }

    #[test]
    fn lower_bound_examples() {
        // ζ = 1/2: |e^{iπ}−1| = 2, numerator 1 → C = 1/2.
        let r = check_kernel_lower_bound(&[Complex64::new(0.5, 0.0)], 0.125).unwrap();
        assert_abs_diff_eq!(r.c_max, 0.5, epsilon = 1e-12);

        // ζ = 10i: numerator e⁰ = 1, denominator ≈ 1 → C ≈ 1.
        let r = check_kernel_lower_bound(&[Complex64::new(0.0, 10.0)], 0.125).unwrap();
        assert_abs_diff_eq!(r.c_max, 1.0, epsilon = 1e-12);

        // ζ = −10i: numerator e^{20π} balances the e^{20π} denominator → C ≈ 1.
        let r = check_kernel_lower_bound(&[Complex64::new(0.0, -10.0)], 0.125).unwrap();
        assert_abs_diff_eq!(r.c_max, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn integrand_decay_rate_on_the_legs() {
        // |φ(iη)·g(iη, z)| ~ e^{−rate·|η|} per leg with
        // rate = π − σ − |π − arg z| (σ = 0 for φ = exp); the fitted rate
        // must reach at least 90% of it.
        let phi = crate::expr::parse("exp(z1)", 1).unwrap();
        for z in [
            Complex64::new(-1.0, 0.0),
            Complex64::from_polar(0.5, 2.0),
            Complex64::from_polar(2.0, 4.5),
        ] {
            let bp = BranchedPower::new(z).unwrap();
            let alpha = bp.log_z().im;
            let expected = PI - (PI - alpha).abs();
            for sign in [1.0, -1.0] {
                let ts: Vec<f64> = (1..=10).map(|k| 2.0 * k as f64).collect();
                let logs: Vec<f64> = ts
                    .iter()
                    .map(|&t| {
                        let zeta = Complex64::new(0.0, sign * t);
                        let v = phi.eval(&[zeta]).unwrap() * kernel_1d(zeta, &bp, 0.125).unwrap();
                        v.norm().ln()
                    })
                    .collect();
                // Least-squares slope of ln|f| against t.
                let n = ts.len() as f64;
                let mx = ts.iter().sum::<f64>() / n;
                let my = logs.iter().sum::<f64>() / n;
                let num: f64 = ts.iter().zip(&logs).map(|(t, l)| (t - mx) * (l - my)).sum();
                let den: f64 = ts.iter().map(|t| (t - mx) * (t - mx)).sum();
                let fitted = -(num / den);
                assert!(
                    fitted >= 0.9 * expected,
                    "leg sign {sign}, z = {z}: fitted {fitted:.3} < 0.9·{expected:.3}"
                );
            }
        }
    }

    #[test]
    fn lower_bound_preconditions() {
        assert!(matches!(
            check_kernel_lower_bound(&[Complex64::new(-0.5, 1.0)], 0.125),
            Err(KernelError::LeftHalfPlane { .. })
        ));
        assert!(matches!(
            check_kernel_lower_bound(&[Complex64::new(1.01, 0.0)], 0.125),
            Err(KernelError::PoleProximity { .. })
        ));
    }
}
