//! The piece-wise-linear growth majorant, its hyperplane-arrangement fan, and
//! the polar polytope that describes the sectorial continuation domain.
//!
//! A majorant is the data `(εₚ, aₚ, aₚ⁰)ₚ` of the piece-wise affine function
//!
//! ```text
//! g̃(η) = Σₚ εₚ·|⟨aₚ, η⟩ + aₚ⁰|,            εₚ = ±1,
//! ```
//!
//! which must dominate `log|φ(iη)|` on the imaginary subspace. Dropping the
//! affine offsets and adding the correction `π·Σₖ(ηₖ − |ηₖ|)` gives the
//! positively homogeneous function `g(η)` whose polar polytope
//! `P = {α : ⟨μ_ν, α⟩ ≥ g(μ_ν)}` (one half-space per fan ray `μ_ν`) cuts out
//! the admissible argument vectors: the series continues to every `z` with
//! `(arg z₁, …, arg zₙ) ∈ P°`, arguments taken in `(0, 2π)`.

mod fan;
mod polytope;

pub use fan::{build_fan, Fan};
pub use polytope::{
    arg_0_2pi, arg_vector, build_polytope, contains_arg, HalfSpace, Polytope, INTERIOR_SLACK,
    RADIUS_TOL,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("majorant term sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("majorant term has {got} slope entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("delta must be positive, got {0}")]
    BadDelta(f64),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("ray enumeration is capped at n <= 3, got n = {0}")]
    DimensionCapExceeded(usize),
    #[error("argument vector has a zero component at index {0}")]
    ZeroComponent(usize),
}

/// One term `εₚ·|⟨aₚ, η⟩ + aₚ⁰|` of the majorant.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorantTerm {
    eps: i8,
    a: Vec<f64>,
    a0: f64,
}

impl MajorantTerm {
    pub fn new(eps: i8, a: Vec<f64>, a0: f64) -> Result<Self, GeometryError> {
        if eps != 1 && eps != -1 {
            return Err(GeometryError::BadSign(eps));
        }
        Ok(MajorantTerm { eps, a, a0 })
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn slopes(&self) -> &[f64] {
        &self.a
    }

    pub fn offset(&self) -> f64 {
        self.a0
    }

    /// A term with all-zero slopes contributes `|a₀|` to g̃ and nothing to g
    /// and defines no hyperplane.
    pub fn is_constant(&self) -> bool {
        self.a.iter().all(|&x| x == 0.0)
    }
}

/// Majorant data plus the growth-budget constants `(δ, b, C)` of the
/// right-half-space estimate `log|φ| ≤ Σⱼ (π−δ)|ηⱼ| + b·ξⱼ + C`.
#[derive(Debug, Clone, PartialEq)]
pub struct Majorant {
    terms: Vec<MajorantTerm>,
    n: usize,
    delta: f64,
    b: f64,
    big_c: f64,
}

impl Majorant {
    pub fn new(
        terms: Vec<MajorantTerm>,
        n: usize,
        delta: f64,
        b: f64,
        big_c: f64,
    ) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if !delta.is_finite() || delta <= 0.0 {
            return Err(GeometryError::BadDelta(delta));
        }
        for t in &terms {
            if t.a.len() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    got: t.a.len(),
                });
            }
        }
        Ok(Majorant {
            terms,
            n,
            delta,
            b,
            big_c,
        })
    }

    pub fn terms(&self) -> &[MajorantTerm] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn big_c(&self) -> f64 {
        self.big_c
    }

    /// Σₚ |aₚ⁰| — the total affine offset; bounds |g̃ − (g − π-correction)|.
    pub fn offset_budget(&self) -> f64 {
        self.terms.iter().map(|t| t.a0.abs()).sum()
    }

    /// The restriction of the majorant to the variables in `keep` (other
    /// coordinates of each slope vector dropped, offsets kept).
    pub fn restrict(&self, keep: &[usize]) -> Majorant {
        let terms = self
            .terms
            .iter()
            .map(|t| MajorantTerm {
                eps: t.eps,
                a: keep.iter().map(|&j| t.a[j]).collect(),
                a0: t.a0,
            })
            .collect();
        Majorant {
            terms,
            n: keep.len(),
            delta: self.delta,
            b: self.b,
            big_c: self.big_c,
        }
    }
}

/// `g̃(η) = Σₚ εₚ·|⟨aₚ, η⟩ + aₚ⁰|`.
pub fn eval_g_tilde(m: &Majorant, eta: &[f64]) -> f64 {
    debug_assert_eq!(eta.len(), m.n);
    m.terms
        .iter()
        .map(|t| t.eps as f64 * (dot(&t.a, eta) + t.a0).abs())
        .sum()
}

/// `g(η) = Σₚ εₚ·|⟨aₚ, η⟩| + π·Σₖ(ηₖ − |ηₖ|)` — offsets dropped, π-correction
/// added; positively homogeneous of degree 1.
pub fn eval_g(m: &Majorant, eta: &[f64]) -> f64 {
    debug_assert_eq!(eta.len(), m.n);
    let linear: f64 = m
        .terms
        .iter()
        .map(|t| t.eps as f64 * dot(&t.a, eta).abs())
        .sum();
    let correction: f64 = eta.iter().map(|&x| x - x.abs()).sum::<f64>() * std::f64::consts::PI;
    linear + correction
}

/// `σₗ = Σₚ εₚ·|aₚˡ|` — the sector bound for the sub-series with the l-th
/// index running and the others at zero. `l` is 1-based.
pub fn sigma_l(m: &Majorant, l: usize) -> f64 {
    assert!(l >= 1 && l <= m.n, "variable index out of range");
    m.terms
        .iter()
        .map(|t| t.eps as f64 * t.a[l - 1].abs())
        .sum()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
