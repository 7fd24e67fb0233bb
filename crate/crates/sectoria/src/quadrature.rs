//! Composite Gauss–Legendre quadrature for complex-valued integrands on real
//! parameter intervals.
//!
//! Contour integrals in this crate are sums of pieces (vertical legs,
//! circular arcs) that are analytic on their parameter interval, so a fixed
//! Gauss–Legendre order per unit-length panel converges spectrally. Error
//! estimates come from comparing against the same integral at doubled order.

use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Nodes and weights of an `order`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GlRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

static RULE_CACHE: Lazy<Mutex<HashMap<usize, GlRule>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl GlRule {
    /// Fetch (or compute and cache) the rule of the given order.
    pub fn get(order: usize) -> GlRule {
        assert!(
            (1..=256).contains(&order),
            "unsupported Gauss-Legendre order {order}"
        );
        let mut cache = RULE_CACHE.lock().unwrap();
        cache
            .entry(order)
            .or_insert_with(|| GlRule::compute(order))
            .clone()
    }

    /// Newton iteration on the Legendre polynomial Pₙ, starting from the
    /// Chebyshev-like estimate of the k-th root.
    fn compute(order: usize) -> GlRule {
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[k] = -x.abs();
            weights[k] = w;
            nodes[n - 1 - k] = x.abs();
            weights[n - 1 - k] = w;
        }
        if n % 2 == 1 {
            let (_, d) = legendre_with_derivative(n, 0.0);
            nodes[n / 2] = 0.0;
            weights[n / 2] = 2.0 / (d * d);
        }
        GlRule { nodes, weights }
    }

    /// ∫ₐᵇ f(t) dt for a complex-valued f; errors from `f` abort the panel.
    pub fn integrate<E>(
        &self,
        a: f64,
        b: f64,
        mut f: impl FnMut(f64) -> Result<Complex64, E>,
    ) -> Result<Complex64, E> {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x)? * *w;
        }
        Ok(acc * half)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Split `[a, b]` (with `0 < a < b`) into panels that grow geometrically away
/// from `a` up to unit length, then continue in unit steps. Keeps each panel's
/// length comparable to its distance from a singularity at parameter 0.
pub fn graded_panels(a: f64, b: f64) -> Vec<(f64, f64)> {
    debug_assert!(a > 0.0 && b > a);
    let mut cuts = vec![a];
    let mut t = a;
    while t < b {
        let step = (t.min(1.0)).min(b - t).max(1e-12);
        t = (t + step).min(b);
        cuts.push(t);
    }
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Split `[a, b]` into `count` equal panels.
pub fn uniform_panels(a: f64, b: f64, count: usize) -> Vec<(f64, f64)> {
    let count = count.max(1);
    let h = (b - a) / count as f64;
    (0..count)
        .map(|k| (a + h * k as f64, a + h * (k + 1) as f64))
        .collect()
}

/// Integrate `f` over a list of panels at the given order, summing in panel
/// order (fixed order keeps runs bit-stable).
pub fn integrate_panels<E>(
    panels: &[(f64, f64)],
    order: usize,
    mut f: impl FnMut(f64) -> Result<Complex64, E>,
) -> Result<Complex64, E> {
    let rule = GlRule::get(order);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(a, b) in panels {
        acc += rule.integrate(a, b, &mut f)?;
    }
    Ok(acc)
}
