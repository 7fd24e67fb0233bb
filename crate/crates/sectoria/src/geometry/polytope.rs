//! Polar polytope `P = {α : ⟨μ_ν, α⟩ ≥ g(μ_ν)}` and its interior certificate.
//!
//! Since the rays come in ± pairs and always include the coordinate
//! directions, `P` is bounded. Its Chebyshev center (the point maximising the
//! minimal half-space slack) doubles as a constructive nonemptiness witness:
//! a positive radius certifies an interior point, radius ≤ 0 certifies that
//! the interior is empty.

use num_complex::Complex64;

use super::{build_fan, dot, eval_g, GeometryError, Majorant};

/// Membership requires strictly positive slack; boundary points count as
/// outside.
pub const INTERIOR_SLACK: f64 = 1e-12;

/// Chebyshev radii at or below this are treated as an empty interior.
pub const RADIUS_TOL: f64 = 1e-9;

/// Half-space `⟨normal, α⟩ ≥ offset` with a unit normal.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    pub halfspaces: Vec<HalfSpace>,
    /// Chebyshev-center witness; present iff the interior is certified
    /// nonempty (radius > [`RADIUS_TOL`]).
    pub interior_point: Option<Vec<f64>>,
    /// Maximal inscribed-ball radius; clamped to ≤ 0 when no interior point
    /// is certified.
    pub chebyshev_radius: f64,
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.halfspaces[0].normal.len()
    }

    /// Minimal slack of `alpha` over all half-spaces.
    pub fn min_slack(&self, alpha: &[f64]) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| dot(&h.normal, alpha) - h.offset)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Build `P` from the majorant: one half-space per fan ray `μ_ν` with offset
/// `g(μ_ν)`, then certify the interior via the Chebyshev-center program
/// `max r  s.t.  ⟨μ_ν, α⟩ − g(μ_ν) ≥ r` (unit normals).
pub fn build_polytope(m: &Majorant) -> Result<Polytope, GeometryError> {
    let fan = build_fan(m)?;
    let halfspaces: Vec<HalfSpace> = fan
        .rays
        .iter()
        .map(|ray| HalfSpace {
            normal: ray.clone(),
            offset: eval_g(m, ray),
        })
        .collect();

    let (center, radius) = chebyshev_center(&halfspaces, m.dim());
    let (interior_point, chebyshev_radius) = match center {
        Some(alpha) if radius > RADIUS_TOL => (Some(alpha), radius),
        _ => (None, radius.min(0.0)),
    };
    Ok(Polytope {
        halfspaces,
        interior_point,
        chebyshev_radius,
    })
}

/// Is `Arg z` (component-wise, taken in `(0, 2π]`) strictly inside `P`?
///
/// Positive reals get argument 2π, which always fails the strict test against
/// the `−α` faces, so the branch cut along ℝ₊ is excluded automatically. An
/// uncertified (empty-interior) polytope contains nothing.
pub fn contains_arg(p: &Polytope, z: &[Complex64]) -> Result<bool, GeometryError> {
    debug_assert_eq!(z.len(), p.dim());
    let alpha = arg_vector(z)?;
    if p.interior_point.is_none() {
        return Ok(false);
    }
    Ok(p.min_slack(&alpha) > INTERIOR_SLACK)
}

/// Component-wise argument in `(0, 2π]`; errors on zero components.
pub fn arg_vector(z: &[Complex64]) -> Result<Vec<f64>, GeometryError> {
    z.iter()
        .enumerate()
        .map(|(j, zj)| {
            if zj.re == 0.0 && zj.im == 0.0 {
                return Err(GeometryError::ZeroComponent(j + 1));
            }
            Ok(arg_0_2pi(*zj))
        })
        .collect()
}

/// Argument normalised to `(0, 2π]` (positive reals map to 2π).
pub fn arg_0_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Maximise `r` subject to `⟨μ_ν, α⟩ − r ≥ offset_ν` by exhaustive vertex
/// enumeration over (n+1)-subsets of active constraints. The feasible set is
/// pointed (rays span ℝⁿ) and the optimum is finite, so it is attained at a
/// basic solution; at desk-scale ray counts this is robust and fast enough.
fn chebyshev_center(halfspaces: &[HalfSpace], n: usize) -> (Option<Vec<f64>>, f64) {
    let d = halfspaces.len();
    let vars = n + 1;
    if d < vars {
        return (None, f64::NEG_INFINITY);
    }

    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut subset: Vec<usize> = (0..vars).collect();
    loop {
        if let Some(x) = solve_active_set(halfspaces, &subset, n) {
            let r = x[n];
            let feasible = halfspaces
                .iter()
                .all(|h| dot(&h.normal, &x[..n]) - r >= h.offset - 1e-9);
            if feasible && best.as_ref().is_none_or(|(_, br)| r > *br) {
                best = Some((x[..n].to_vec(), r));
            }
        }
        if !next_combination(&mut subset, d) {
            break;
        }
    }

    match best {
        Some((alpha, r)) => (Some(alpha), r),
        None => (None, f64::NEG_INFINITY),
    }
}

/// Solve the (n+1)×(n+1) system with the subset's constraints tight.
fn solve_active_set(halfspaces: &[HalfSpace], subset: &[usize], n: usize) -> Option<Vec<f64>> {
    let vars = n + 1;
    let mut a = vec![vec![0.0; vars]; vars];
    let mut b = vec![0.0; vars];
    for (row, &idx) in subset.iter().enumerate() {
        let h = &halfspaces[idx];
        a[row][..n].copy_from_slice(&h.normal);
        a[row][n] = -1.0;
        b[row] = h.offset;
    }
    gaussian_solve(&mut a, &mut b)
}

#[allow(clippy::needless_range_loop)] // row pairs of `a` preclude iterator form
fn gaussian_solve(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let (piv_row, piv_val) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if piv_val < 1e-10 {
            return None;
        }
        a.swap(col, piv_row);
        b.swap(col, piv_row);
        for r in (col + 1)..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in (row + 1)..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

fn next_combination(subset: &mut [usize], d: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < d - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
