//! # sectoria
//!
//! Numerical analytic continuation of one-variable and multiple power series
//! into sectorial domains.
//!
//! Given an entire function `φ(ζ₁,…,ζₙ)` that interpolates the coefficients of
//! a power series, `f(z) = Σ φ(k) zᵏ`, the sum of the series is recovered — far
//! beyond its polydisk of convergence — as a contour integral of
//! `φ(ζ)·zᶻ/(e^{2πiζ}−1)` over a deformed imaginary axis. The admissible
//! domain is sectorial: it is the preimage `Arg⁻¹(P°)` of the interior of a
//! polytope `P` built from a piece-wise-linear majorant of `log|φ|` on the
//! imaginary subspace.
//!
//! The crate is organised around that pipeline:
//!
//! - [`expr`] — parse and evaluate interpolating functions given as text;
//! - [`indicator`] — estimate the Phragmén–Lindelöf indicator `h_φ(θ)` of a
//!   one-variable interpolant and derive the admissible sector;
//! - [`geometry`] — the piece-wise-linear majorant, the fan of its hyperplane
//!   arrangement, and the polar polytope `P` with an interior certificate;
//! - [`kernel`] — the Cauchy-type kernels `zᶻ/(e^{2πiζ}−1)`, contour
//!   construction, and finite-contour residue checks;
//! - [`continuation`] — the continued value at a point, with quadrature and
//!   truncation error estimates, plus hypothesis checks.
//!
//! ## Example
//!
//! Continue `Σ eᵏ zᵏ` (radius of convergence `e⁻¹`) to `z = −1`:
//!
//! ```
//! use num_complex::Complex64;
//! use sectoria::{continuation, expr, geometry, kernel};
//!
//! let phi = expr::parse("exp(z1)", 1).unwrap();
//! let majorant = geometry::Majorant::new(
//!     vec![geometry::MajorantTerm::new(1, vec![1.0], 0.0).unwrap()],
//!     1, 0.5, 1.0, 0.0,
//! ).unwrap();
//! let problem = continuation::Problem::new(phi, majorant, kernel::ContourSpec::for_delta(0.5)).unwrap();
//!
//! let sector = sectoria::indicator::SectorSpec::new(0.0).unwrap();
//! let result = continuation::continue_1d(&problem, sector, Complex64::new(-1.0, 0.0), 1e-8).unwrap();
//!
//! let e = std::f64::consts::E;
//! assert!((result.value - Complex64::new(1.0 / (1.0 + e), 0.0)).norm() < 1e-7);
//! ```

pub mod continuation;
pub mod expr;
pub mod geometry;
pub mod indicator;
pub mod kernel;
pub mod quadrature;

pub use continuation::{ContinuationResult, OverlapReport, Problem};
pub use expr::InterpolantExpr;
pub use geometry::{Fan, Majorant, MajorantTerm, Polytope};
pub use indicator::{IndicatorEstimate, SectorSpec};
pub use kernel::{BranchedPower, ContourSpec};
