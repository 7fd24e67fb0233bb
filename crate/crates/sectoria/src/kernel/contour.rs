//! Contour geometry: the deformed imaginary axis Γ¹ and the finite boundary
//! ∂Gₘ, discretised into Gauss–Legendre nodes.
//!
//! Γ¹ is the imaginary axis indented to the right around the kernel pole at
//! the origin. It is traversed top to bottom (the orientation inherited from
//! the counterclockwise finite contours), so `Σ_{n≥1} φ(n)zⁿ = ∫_{Γ¹} φ·g dζ`
//! with no extra prefactor: the `2πi` of the residue theorem cancels against
//! the residues `φ(n)zⁿ/(2πi)` of the kernel.

use num_complex::Complex64;

use super::KernelError;
use crate::quadrature::GlRule;

/// One analytic piece of a contour, parametrised over a real interval.
#[derive(Debug, Clone, PartialEq)]
pub enum ContourPiece {
    /// `ζ = i·t`, `t` running from `t_start` to `t_end` (same sign).
    ImagLeg { t_start: f64, t_end: f64 },
    /// `ζ = radius·e^{iθ}`, `θ` running from `theta_start` to `theta_end`.
    Arc {
        radius: f64,
        theta_start: f64,
        theta_end: f64,
    },
}

impl ContourPiece {
    /// Point and velocity at parameter `s`.
    pub fn map(&self, s: f64) -> (Complex64, Complex64) {
        match self {
            ContourPiece::ImagLeg { .. } => (Complex64::new(0.0, s), Complex64::new(0.0, 1.0)),
            ContourPiece::Arc { radius, .. } => {
                let pos = Complex64::from_polar(*radius, s);
                (pos, Complex64::new(0.0, 1.0) * pos)
            }
        }
    }

    /// Panel cut points in parameter coordinates, oriented with the piece.
    /// Legs are graded towards the origin (panel length ≈ distance to the
    /// pole at 0), arcs are split per unit arc length with a floor of 4.
    fn panel_cuts(&self) -> Vec<f64> {
        match self {
            ContourPiece::ImagLeg { t_start, t_end } => {
                let lo = t_start.abs().min(t_end.abs());
                let hi = t_start.abs().max(t_end.abs());
                let mut cuts = graded_cuts(lo, hi);
                if t_start.abs() > t_end.abs() {
                    cuts.reverse();
                }
                if *t_start < 0.0 || *t_end < 0.0 {
                    cuts.iter_mut().for_each(|c| *c = -*c);
                }
                cuts
            }
            ContourPiece::Arc {
                radius,
                theta_start,
                theta_end,
            } => {
                let len = (theta_end - theta_start).abs() * radius;
                let count = (len.ceil() as usize).max(4);
                (0..=count)
                    .map(|k| theta_start + (theta_end - theta_start) * k as f64 / count as f64)
                    .collect()
            }
        }
    }
}

fn graded_cuts(a: f64, b: f64) -> Vec<f64> {
    debug_assert!(a > 0.0 && b > a);
    let mut cuts = vec![a];
    let mut t = a;
    while t < b - 1e-12 {
        let step = t.min(1.0).min(b - t).max(1e-12);
        t = (t + step).min(b);
        cuts.push(t);
    }
    cuts
}

/// Quadrature parameters for the deformed contours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Radius of the right-bulging indent semicircle around 0 (0 < r ≤ 1/2).
    pub indent_radius: f64,
    /// Minimal extent of the vertical legs; continuation extends it until the
    /// truncation tail bound meets its target.
    pub truncation: f64,
    /// Gauss–Legendre order per (≤ unit-length) panel.
    pub nodes_per_unit: usize,
    /// Guard radius around the integer pole lattice (≤ min(1/8, indent)).
    pub pole_exclusion: f64,
}

impl ContourSpec {
    pub fn new(
        indent_radius: f64,
        truncation: f64,
        nodes_per_unit: usize,
        pole_exclusion: f64,
    ) -> Result<Self, KernelError> {
        if !(indent_radius > 0.0 && indent_radius <= 0.5) {
            return Err(KernelError::InvalidSpec(format!(
                "indent radius {indent_radius} not in (0, 1/2]"
            )));
        }
        if truncation.is_nan() || truncation < 1.0 {
            return Err(KernelError::InvalidSpec(format!(
                "truncation {truncation} must be >= 1"
            )));
        }
        if !(4..=96).contains(&nodes_per_unit) {
            return Err(KernelError::InvalidSpec(format!(
                "nodes_per_unit {nodes_per_unit} not in 4..=96"
            )));
        }
        if !(pole_exclusion > 0.0 && pole_exclusion <= 0.125) {
            return Err(KernelError::InvalidSpec(format!(
                "pole exclusion {pole_exclusion} not in (0, 1/8]"
            )));
        }
        Ok(ContourSpec {
            indent_radius,
            truncation,
            nodes_per_unit,
            // Indent nodes sit exactly at this distance from the origin pole.
            pole_exclusion: pole_exclusion.min(indent_radius),
        })
    }

    /// Defaults for a problem with growth margin δ: indent min(1/2, δ/2).
    pub fn for_delta(delta: f64) -> ContourSpec {
        let indent = (0.5f64).min(delta / 2.0).max(1e-3);
        ContourSpec::new(indent, 1.0, 16, (0.125f64).min(indent)).unwrap()
    }
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec::new(0.5, 1.0, 16, 0.125).unwrap()
    }
}

/// Γ¹ truncated at |η| = `t_max`, in fixed summation order: upper leg (from
/// i·t_max down to the indent), lower leg (from the indent down to −i·t_max),
/// then the indent arc through +indent.
pub fn gamma1_pieces(indent: f64, t_max: f64) -> Vec<ContourPiece> {
    use std::f64::consts::FRAC_PI_2;
    vec![
        ContourPiece::ImagLeg {
            t_start: t_max,
            t_end: indent,
        },
        ContourPiece::ImagLeg {
            t_start: -indent,
            t_end: -t_max,
        },
        ContourPiece::Arc {
            radius: indent,
            theta_start: FRAC_PI_2,
            theta_end: -FRAC_PI_2,
        },
    ]
}

/// The counterclockwise boundary ∂Gₘ (legs, indent, outer arc), enclosing the
/// poles 1..m: legs to ±i(m+1/2), indent of the given radius bulging right
/// around 0, and the right half-circle of radius m+1/2.
pub fn boundary_gm_pieces(indent: f64, m: u32) -> Vec<ContourPiece> {
    use std::f64::consts::FRAC_PI_2;
    let r = m as f64 + 0.5;
    vec![
        ContourPiece::ImagLeg {
            t_start: r,
            t_end: indent,
        },
        ContourPiece::ImagLeg {
            t_start: -indent,
            t_end: -r,
        },
        ContourPiece::Arc {
            radius: indent,
            theta_start: FRAC_PI_2,
            theta_end: -FRAC_PI_2,
        },
        ContourPiece::Arc {
            radius: r,
            theta_start: -FRAC_PI_2,
            theta_end: FRAC_PI_2,
        },
    ]
}

/// Discretise the pieces: (node ζ, weight w·ζ'(s)·panel scale), emitted in a
/// fixed order so summation is reproducible.
pub(crate) fn contour_nodes(pieces: &[ContourPiece], order: usize) -> Vec<(Complex64, Complex64)> {
    let rule = GlRule::get(order);
    let mut out = Vec::new();
    for piece in pieces {
        let cuts = piece.panel_cuts();
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let half = 0.5 * (w[1] - w[0]);
            for (x, wgt) in rule.nodes.iter().zip(&rule.weights) {
                let (zeta, vel) = piece.map(mid + half * x);
                out.push((zeta, vel * (wgt * half)));
            }
        }
    }
    out
}

/// ∫ f(ζ) dζ over the pieces at the given order.
pub(crate) fn integrate_contour<E>(
    pieces: &[ContourPiece],
    order: usize,
    mut f: impl FnMut(Complex64) -> Result<Complex64, E>,
) -> Result<Complex64, E> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (zeta, w) in contour_nodes(pieces, order) {
        acc += f(zeta)? * w;
    }
    Ok(acc)
}
