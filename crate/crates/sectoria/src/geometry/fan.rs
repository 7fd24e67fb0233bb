//! Ray enumeration for the fan of the majorant's hyperplane arrangement.
//!
//! The arrangement consists of the hyperplanes `⟨aₚ, η⟩ = 0` of the majorant
//! plus the coordinate hyperplanes `ηₖ = 0` (always present: the π-correction
//! of `g` breaks linearity there). Its one-dimensional cones are spanned by
//! the nullspaces of (n−1)-subsets of the normal set; each subset of full
//! rank contributes a line through the origin, i.e. two opposite rays.

use itertools::Itertools;

use super::{dot, norm, GeometryError, Majorant};

const DIRECTION_TOL: f64 = 1e-9;

/// The 1-dimensional generators of the arrangement fan.
#[derive(Debug, Clone, PartialEq)]
pub struct Fan {
    /// Unit ray directions, both orientations, deduplicated and sorted.
    pub rays: Vec<Vec<f64>>,
    /// The hyperplane normals that define the arrangement (majorant slopes
    /// plus coordinate normals, deduplicated up to sign).
    pub defining_normals: Vec<Vec<f64>>,
}

/// Enumerate the fan's rays. Exact enumeration is capped at `n ≤ 3`.
pub fn build_fan(m: &Majorant) -> Result<Fan, GeometryError> {
    let n = m.dim();
    if n > 3 {
        return Err(GeometryError::DimensionCapExceeded(n));
    }

    let mut normals: Vec<Vec<f64>> = Vec::new();
    for term in m.terms() {
        if term.is_constant() {
            continue;
        }
        push_direction(&mut normals, unit(term.slopes()));
    }
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        push_direction(&mut normals, e);
    }

    let mut rays: Vec<Vec<f64>> = Vec::new();
    if n == 1 {
        rays.push(vec![1.0]);
        rays.push(vec![-1.0]);
    } else {
        for subset in (0..normals.len()).combinations(n - 1) {
            let rows: Vec<&[f64]> = subset.iter().map(|&i| normals[i].as_slice()).collect();
            if let Some(u) = nullspace_direction(&rows, n) {
                push_ray(&mut rays, u.clone());
                push_ray(&mut rays, u.iter().map(|x| -x).collect());
            }
        }
    }
    rays.sort_by(|a, b| a.partial_cmp(b).unwrap());

    Ok(Fan {
        rays,
        defining_normals: normals,
    })
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|x| x / n).collect()
}

/// Keep one normal per hyperplane: directions equal up to sign are the same
/// hyperplane.
fn push_direction(list: &mut Vec<Vec<f64>>, v: Vec<f64>) {
    for w in list.iter() {
        if dot(w, &v).abs() > 1.0 - DIRECTION_TOL {
            return;
        }
    }
    list.push(v);
}

fn push_ray(list: &mut Vec<Vec<f64>>, v: Vec<f64>) {
    for w in list.iter() {
        let d2: f64 = w.iter().zip(&v).map(|(a, b)| (a - b) * (a - b)).sum();
        if d2.sqrt() < DIRECTION_TOL {
            return;
        }
    }
    list.push(v);
}

/// Unit vector spanning the common nullspace of `n-1` row vectors, or `None`
/// if the rows are not independent. Gaussian elimination with partial
/// pivoting; sign normalised so the first nonzero component is positive
/// before orientation duplication.
#[allow(clippy::needless_range_loop)] // row pairs of `a` preclude iterator form
fn nullspace_direction(rows: &[&[f64]], n: usize) -> Option<Vec<f64>> {
    let m = rows.len();
    debug_assert_eq!(m, n - 1);
    let mut a: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivot_cols = Vec::with_capacity(m);
    let mut row = 0;
    for col in 0..n {
        let (best, best_val) = (row..m)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if best_val < 1e-12 {
            continue;
        }
        a.swap(row, best);
        let piv = a[row][col];
        for r in 0..m {
            if r != row {
                let factor = a[r][col] / piv;
                for c in 0..n {
                    a[r][c] -= factor * a[row][c];
                }
            }
        }
        pivot_cols.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    if row < m {
        return None; // rank-deficient subset: nullspace has dimension > 1
    }
    let free_col = (0..n).find(|c| !pivot_cols.iter().any(|&(_, pc)| pc == *c))?;
    let mut u = vec![0.0; n];
    u[free_col] = 1.0;
    for &(r, c) in &pivot_cols {
        u[c] = -a[r][free_col] / a[r][c];
    }
    let mut u = unit(&u);
    if let Some(first) = u.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Some(u)
}
