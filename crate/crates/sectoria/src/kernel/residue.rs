//! Finite-contour residue identities: the counterclockwise integral of
//! `φ(ζ)·g(ζ,z)` over ∂Gₘ equals the partial sum `Σ_{n=1}^{m} φ(n)·zⁿ`, and
//! the tensor product of such contours recovers the multiple partial sum.
//! The direct summation oracle is computed alongside, so the identity itself
//! is a checkable output.

use num_complex::Complex64;

use super::contour::{boundary_gm_pieces, contour_nodes, ContourPiece, ContourSpec};
use super::{kernel_1d, BranchedPower, KernelError};
use crate::expr::InterpolantExpr;

/// Result of a finite-contour residue check.
#[derive(Debug, Clone, PartialEq)]
pub struct ResiduePartialSum {
    /// Numerically integrated contour value (fine grid).
    pub integral: Complex64,
    /// Direct summation oracle `Σ φ(k)·zᵏ` (indices from 1).
    pub direct_sum: Complex64,
    /// Node-doubling quadrature error estimate.
    pub quad_error: f64,
    /// Magnitude of the outer-arc contribution alone (the part that the
    /// theory predicts vanishes as m → ∞ for z in the decay region).
    pub arc_magnitude: f64,
}

impl ResiduePartialSum {
    pub fn abs_error(&self) -> f64 {
        (self.integral - self.direct_sum).norm()
    }

    pub fn rel_error(&self) -> f64 {
        self.abs_error() / (1.0 + self.direct_sum.norm())
    }
}

/// Integrate `φ·g` counterclockwise over ∂Gₘ and compare with the direct
/// partial sum. `z` enters through the branched power; positive real `z`
/// needs [`BranchedPower::with_arg`] (argument 2π).
pub fn residue_partial_sum_1d(
    phi: &InterpolantExpr,
    bp: &BranchedPower,
    m: u32,
    spec: &ContourSpec,
) -> Result<ResiduePartialSum, KernelError> {
    if m == 0 {
        return Err(KernelError::InvalidSpec("m must be at least 1".into()));
    }
    let pieces = boundary_gm_pieces(spec.indent_radius, m);
    let integrand = |zeta: Complex64| -> Result<Complex64, KernelError> {
        let phi_v = phi.eval(&[zeta])?;
        Ok(phi_v * kernel_1d(zeta, bp, spec.pole_exclusion)?)
    };

    let coarse = sum_nodes(&contour_nodes(&pieces, spec.nodes_per_unit), integrand)?;
    let fine = sum_nodes(&contour_nodes(&pieces, 2 * spec.nodes_per_unit), integrand)?;
    let quad_error = (fine - coarse).norm();
    check_convergence(quad_error, fine.norm())?;

    let arc = [pieces[3].clone()];
    let arc_value = sum_nodes(&contour_nodes(&arc, 2 * spec.nodes_per_unit), integrand)?;

    let mut direct = Complex64::new(0.0, 0.0);
    let mut z_pow = Complex64::new(1.0, 0.0);
    for n in 1..=m {
        z_pow *= bp.z();
        direct += phi.eval(&[Complex64::new(n as f64, 0.0)])? * z_pow;
    }

    Ok(ResiduePartialSum {
        integral: fine,
        direct_sum: direct,
        quad_error,
        arc_magnitude: arc_value.norm(),
    })
}

/// Tensor-product residue identity over ∂G_{m₁} × … × ∂G_{mₙ}. Capped at
/// n ≤ 2 and mⱼ ≤ 8 (the piece count grows like 4ⁿ and the node count like
/// the product of contour lengths).
pub fn residue_partial_sum_nd(
    phi: &InterpolantExpr,
    bps: &[BranchedPower],
    m: &[u32],
    spec: &ContourSpec,
) -> Result<ResiduePartialSum, KernelError> {
    let n = bps.len();
    if n != m.len() || n != phi.nvars() {
        return Err(KernelError::InvalidSpec(
            "dimension mismatch between phi, z, and m".into(),
        ));
    }
    if n == 1 {
        return residue_partial_sum_1d(phi, &bps[0], m[0], spec);
    }
    if n > 2 {
        return Err(KernelError::InvalidSpec(format!(
            "tensor-product residue check is capped at n <= 2, got {n}"
        )));
    }
    if m.iter().any(|&mj| mj == 0 || mj > 8) {
        return Err(KernelError::InvalidSpec("each m_j must be in 1..=8".into()));
    }

    let weighted = |order_scale: usize, legs_only: bool| -> Result<Complex64, KernelError> {
        let mut per_var: Vec<Vec<(Complex64, Complex64)>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut pieces = boundary_gm_pieces(spec.indent_radius, m[j]);
            if legs_only {
                pieces.truncate(3); // drop the outer arc: the Γ¹-type part
            }
            let nodes = contour_nodes(&pieces, order_scale * spec.nodes_per_unit);
            let mut with_kernel = Vec::with_capacity(nodes.len());
            for (zeta, w) in nodes {
                with_kernel.push((zeta, w * kernel_1d(zeta, &bps[j], spec.pole_exclusion)?));
            }
            per_var.push(with_kernel);
        }
        tensor_sum(phi, &per_var)
    };

    let coarse = weighted(1, false)?;
    let fine = weighted(2, false)?;
    let quad_error = (fine - coarse).norm();
    check_convergence(quad_error, fine.norm())?;
    let legs_part = weighted(2, true)?;

    let mut direct = Complex64::new(0.0, 0.0);
    let mut k = vec![1u32; n];
    'outer: loop {
        let args: Vec<Complex64> = k.iter().map(|&kj| Complex64::new(kj as f64, 0.0)).collect();
        let mut term = phi.eval(&args)?;
        for j in 0..n {
            term *= power(bps[j].z(), k[j]);
        }
        direct += term;
        for j in 0..n {
            if k[j] < m[j] {
                k[j] += 1;
                continue 'outer;
            }
            k[j] = 1;
        }
        break;
    }

    Ok(ResiduePartialSum {
        integral: fine,
        direct_sum: direct,
        quad_error,
        arc_magnitude: (fine - legs_part).norm(),
    })
}

fn sum_nodes(
    nodes: &[(Complex64, Complex64)],
    mut f: impl FnMut(Complex64) -> Result<Complex64, KernelError>,
) -> Result<Complex64, KernelError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (zeta, w) in nodes {
        acc += f(*zeta)? * w;
    }
    Ok(acc)
}

fn tensor_sum(
    phi: &InterpolantExpr,
    per_var: &[Vec<(Complex64, Complex64)>],
) -> Result<Complex64, KernelError> {
    debug_assert_eq!(per_var.len(), 2);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut args = [Complex64::new(0.0, 0.0); 2];
    for &(z0, w0) in &per_var[0] {
        args[0] = z0;
        let mut inner = Complex64::new(0.0, 0.0);
        for &(z1, w1) in &per_var[1] {
            args[1] = z1;
            inner += phi.eval(&args)? * w1;
        }
        acc += inner * w0;
    }
    Ok(acc)
}

fn power(z: Complex64, k: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..k {
        acc *= z;
    }
    acc
}

fn check_convergence(estimate: f64, magnitude: f64) -> Result<(), KernelError> {
    if estimate > 1e-6 * (1.0 + magnitude) {
        return Err(KernelError::QuadratureNonConvergence {
            estimate,
            magnitude,
        });
    }
    Ok(())
}

/// Arc decay probe: |outer-arc contribution| for each m in `ms`.
pub fn arc_magnitudes(
    phi: &InterpolantExpr,
    bp: &BranchedPower,
    ms: &[u32],
    spec: &ContourSpec,
) -> Result<Vec<f64>, KernelError> {
    ms.iter()
        .map(|&m| {
            let arc = [ContourPiece::Arc {
                radius: m as f64 + 0.5,
                theta_start: -std::f64::consts::FRAC_PI_2,
                theta_end: std::f64::consts::FRAC_PI_2,
            }];
            let v = sum_nodes(&contour_nodes(&arc, 2 * spec.nodes_per_unit), |zeta| {
                Ok(phi.eval(&[zeta])? * kernel_1d(zeta, bp, spec.pole_exclusion)?)
            })?;
            Ok(v.norm())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::E;

    fn spec() -> ContourSpec {
        ContourSpec::default()
    }

    #[test]
    fn geometric_partial_sum_via_contour() {
        // φ ≡ 1, z = 0.5 (positive real: closure branch arg = 2π), m = 3.
        let phi = parse("1", 1).unwrap();
        let bp =
            BranchedPower::with_arg(Complex64::new(0.5, 0.0), 2.0 * std::f64::consts::PI).unwrap();
        let r = residue_partial_sum_1d(&phi, &bp, 3, &spec()).unwrap();
        assert!((r.direct_sum - Complex64::new(0.875, 0.0)).norm() < 1e-15);
        assert!(r.abs_error() < 1e-8, "abs err {}", r.abs_error());
    }

    #[test]
    fn exp_partial_sums_via_contour() {
        let phi = parse("exp(z1)", 1).unwrap();
        let bp = BranchedPower::new(Complex64::new(-1.0, 0.0)).unwrap();
        let r = residue_partial_sum_1d(&phi, &bp, 2, &spec()).unwrap();
        let expected = -E + E * E;
        assert!((r.direct_sum - Complex64::new(expected, 0.0)).norm() < 1e-12);
        assert!(r.rel_error() < 1e-8, "rel err {}", r.rel_error());

        let bp = BranchedPower::new(Complex64::new(-0.2, 0.0)).unwrap();
        let r = residue_partial_sum_1d(&phi, &bp, 5, &spec()).unwrap();
        let mut oracle = Complex64::new(0.0, 0.0);
        for n in 1..=5 {
            oracle += Complex64::new(E.powi(n) * (-0.2f64).powi(n), 0.0);
        }
        assert!((r.direct_sum - oracle).norm() < 1e-12);
        assert!((r.integral - oracle).norm() < 1e-8 * (1.0 + oracle.norm()));
    }

    #[test]
    fn two_dimensional_product_of_geometric_sums() {
        let phi = parse("1", 2).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        let bp = BranchedPower::with_arg(Complex64::new(0.5, 0.0), two_pi).unwrap();
        let r = residue_partial_sum_nd(&phi, &[bp, bp], &[2, 2], &spec()).unwrap();
        assert!((r.direct_sum - Complex64::new(0.5625, 0.0)).norm() < 1e-15);
        assert!(r.rel_error() < 1e-8, "rel err {}", r.rel_error());
    }

    #[test]
    fn two_dimensional_separable_exp() {
        let phi = parse("exp(z1+z2)", 2).unwrap();
        let z = Complex64::new(-0.3, 0.0);
        let bp = BranchedPower::new(z).unwrap();
        let r = residue_partial_sum_nd(&phi, &[bp, bp], &[3, 3], &spec()).unwrap();
        let mut one_dim = Complex64::new(0.0, 0.0);
        let mut z_pow = Complex64::new(1.0, 0.0);
        for n in 1..=3 {
            z_pow *= z;
            one_dim += Complex64::new(E.powi(n), 0.0) * z_pow;
        }
        let oracle = one_dim * one_dim;
        assert!((r.direct_sum - oracle).norm() < 1e-12);
        assert!(r.rel_error() < 1e-8, "rel err {}", r.rel_error());
    }

    #[test]
    fn two_dimensional_non_separable() {
        let phi = parse("exp(z1*z2)", 2).unwrap();
        let z = Complex64::new(-0.2, 0.0);
        let bp = BranchedPower::new(z).unwrap();
        let r = residue_partial_sum_nd(&phi, &[bp, bp], &[2, 2], &spec()).unwrap();
        // Oracle: Σ_{k1,k2=1..2} e^{k1·k2} z^{k1+k2}
        let mut oracle = Complex64::new(0.0, 0.0);
        for k1 in 1..=2u32 {
            for k2 in 1..=2u32 {
                oracle += Complex64::new(
                    ((k1 * k2) as f64).exp() * (-0.2f64).powi((k1 + k2) as i32),
                    0.0,
                );
            }
        }
        assert!((r.direct_sum - oracle).norm() < 1e-12);
        assert!(r.rel_error() < 1e-8, "rel err {}", r.rel_error());
    }

    #[test]
    fn caps_are_enforced() {
        let phi = parse("1", 1).unwrap();
        let bp = BranchedPower::new(Complex64::new(-1.0, 0.0)).unwrap();
        assert!(matches!(
            residue_partial_sum_1d(&phi, &bp, 0, &spec()),
            Err(KernelError::InvalidSpec(_))
        ));
        let phi2 = parse("1", 2).unwrap();
        assert!(residue_partial_sum_nd(&phi2, &[bp, bp], &[9, 1], &spec()).is_err());
        let phi3 = parse("1", 3).unwrap();
        assert!(residue_partial_sum_nd(&phi3, &[bp, bp, bp], &[1, 1, 1], &spec()).is_err());
    }
}
