//! Property tests: parser round-trips, AST-level Schwarz reflection,
//! totality of entire expressions, and homogeneity/soundness of the
//! piece-wise-linear geometry.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sectoria::expr::{self, Func, Node};
use sectoria::geometry::{self, Majorant, MajorantTerm};

const NVARS: usize = 2;

fn arb_leaf(with_i: bool) -> BoxedStrategy<Node> {
    let mut options = vec![
        (0.0..100.0f64)
            .prop_map(|v| Node::Lit(Complex64::new(v, 0.0)))
            .boxed(),
        (0..NVARS).prop_map(Node::Var).boxed(),
    ];
    if with_i {
        options.push(Just(Node::Lit(Complex64::new(0.0, 1.0))).boxed());
    }
    proptest::strategy::Union::new(options).boxed()
}

fn arb_node(with_i: bool, with_branch_cuts: bool) -> BoxedStrategy<Node> {
    arb_leaf(with_i)
        .prop_recursive(4, 32, 3, move |inner| {
            let funcs = if with_branch_cuts {
                prop_oneof![
                    Just(Func::Exp),
                    Just(Func::Sin),
                    Just(Func::Cos),
                    Just(Func::Sinh),
                    Just(Func::Cosh),
                    Just(Func::Log)
                ]
                .boxed()
            } else {
                prop_oneof![
                    Just(Func::Exp),
                    Just(Func::Sin),
                    Just(Func::Cos),
                    Just(Func::Sinh),
                    Just(Func::Cosh)
                ]
                .boxed()
            };
            let mut choices = vec![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Add(a.into(), b.into()))
                    .boxed(),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Sub(a.into(), b.into()))
                    .boxed(),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Mul(a.into(), b.into()))
                    .boxed(),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Div(a.into(), b.into()))
                    .boxed(),
                inner.clone().prop_map(|a| Node::Neg(a.into())).boxed(),
                (funcs, inner.clone())
                    .prop_map(|(f, a)| Node::Call(f, a.into()))
                    .boxed(),
            ];
            if with_branch_cuts {
                choices.push(
                    (inner.clone(), inner)
                        .prop_map(|(a, b)| Node::Pow(a.into(), b.into()))
                        .boxed(),
                );
            }
            proptest::strategy::Union::new(choices).boxed()
        })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// print ∘ parse ∘ print = print: the canonical form is a fixed point.
    #[test]
    fn print_parse_print_is_identity(ast in arb_node(true, true)) {
        let printed = expr::InterpolantExpr::from_ast(ast, NVARS).to_string();
        let reparsed = expr::parse(&printed, NVARS)
            .unwrap_or_else(|e| panic!("canonical form `{printed}` failed to reparse: {e}"));
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    /// Schwarz reflection at AST level: for real literal constants,
    /// eval(conj ζ) = conj(eval ζ) wherever both sides evaluate. Pow and log
    /// are excluded: their principal branch breaks reflection exactly on the
    /// negative real axis, which constant sub-trees can land on.
    #[test]
    fn conjugation_symmetry_for_real_coefficients(
        ast in arb_node(false, false),
        re1 in -3.0..3.0f64, im1 in 0.001..3.0f64,
        re2 in -3.0..3.0f64, im2 in 0.001..3.0f64,
    ) {
        let phi = expr::InterpolantExpr::from_ast(ast, NVARS);
        let zeta = [Complex64::new(re1, im1), Complex64::new(re2, im2)];
        let conj: Vec<Complex64> = zeta.iter().map(|c| c.conj()).collect();
        if let (Ok(v), Ok(w)) = (phi.eval(&zeta), phi.eval(&conj)) {
            let diff = (w - v.conj()).norm();
            prop_assert!(diff <= 1e-9 * (1.0 + v.norm()), "diff {} for {}", diff, phi);
        }
    }
}

/// Random entire expressions (no /, log, or ^; literals ≤ 1.5 in magnitude;
/// transcendentals applied only to sub-trees with a small a-priori bound)
/// evaluate to a finite value at 10³ points with |ζⱼ| ≤ 10.
#[test]
fn entire_expressions_are_total() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE1717E);
    let mut asts = Vec::new();
    while asts.len() < 100 {
        if let Some(ast_bound) = gen_entire(&mut rng, 3) {
            if ast_bound.1 < 1e200 {
                asts.push(ast_bound.0);
            }
        }
    }
    let points: Vec<[Complex64; NVARS]> = (0..1000)
        .map(|_| {
            [
                Complex64::from_polar(
                    rng.gen_range(0.0..10.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                ),
                Complex64::from_polar(
                    rng.gen_range(0.0..10.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                ),
            ]
        })
        .collect();
    for ast in asts {
        let phi = expr::InterpolantExpr::from_ast(ast, NVARS);
        for (i, p) in points.iter().enumerate().step_by(10) {
            let v = phi
                .eval(p)
                .unwrap_or_else(|e| panic!("{phi} failed at point {i}: {e}"));
            assert!(v.re.is_finite() && v.im.is_finite());
        }
    }
}

/// Returns (node, magnitude bound valid on |ζⱼ| ≤ 10).
fn gen_entire(rng: &mut ChaCha8Rng, depth: usize) -> Option<(Node, f64)> {
    if depth == 0 || rng.gen_bool(0.3) {
        return Some(if rng.gen_bool(0.5) {
            let v: f64 = rng.gen_range(-1.5..1.5);
            (Node::Lit(Complex64::new(v, 0.0)), v.abs())
        } else {
            (Node::Var(rng.gen_range(0..NVARS)), 10.0)
        });
    }
    let (a, ba) = gen_entire(rng, depth - 1)?;
    match rng.gen_range(0..6) {
        0 => {
            let (b, bb) = gen_entire(rng, depth - 1)?;
            Some((Node::Add(a.into(), b.into()), ba + bb))
        }
        1 => {
            let (b, bb) = gen_entire(rng, depth - 1)?;
            Some((Node::Sub(a.into(), b.into()), ba + bb))
        }
        2 => {
            let (b, bb) = gen_entire(rng, depth - 1)?;
            Some((Node::Mul(a.into(), b.into()), ba * bb))
        }
        3 => Some((Node::Neg(a.into()), ba)),
        _ => {
            // |exp|, |sin|, |cos|, |sinh|, |cosh| are all ≤ e^{|w|}.
            if ba > 100.0 {
                return None;
            }
            let f = [Func::Exp, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh][rng.gen_range(0..5)];
            Some((Node::Call(f, a.into()), ba.exp()))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Positive homogeneity of g on random majorants.
    #[test]
    fn eval_g_is_positively_homogeneous(
        slopes in proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 1..4),
        signs in proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 4),
        eta1 in -5.0..5.0f64, eta2 in -5.0..5.0f64,
        t in 0.01..10.0f64,
    ) {
        let terms: Vec<MajorantTerm> = slopes
            .iter()
            .zip(&signs)
            .map(|(&(x, y), &s)| MajorantTerm::new(s, vec![x, y], 0.0).unwrap())
            .collect();
        let m = Majorant::new(terms, 2, 0.5, 0.0, 0.0).unwrap();
        let eta = [eta1, eta2];
        let scaled = [t * eta1, t * eta2];
        let lhs = geometry::eval_g(&m, &scaled);
        let rhs = t * geometry::eval_g(&m, &eta);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    /// Polytope soundness: a certified interior point has strictly positive
    /// slack against every half-space.
    #[test]
    fn certified_interior_points_are_strictly_interior(
        slopes in proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 0..3),
        scale in 0.1..2.0f64,
    ) {
        let terms: Vec<MajorantTerm> = slopes
            .iter()
            .map(|&(x, y)| MajorantTerm::new(1, vec![scale * x, scale * y], 0.0).unwrap())
            .collect();
        let m = Majorant::new(terms, 2, 0.5, 0.0, 0.0).unwrap();
        let p = geometry::build_polytope(&m).unwrap();
        if let Some(center) = &p.interior_point {
            for h in &p.halfspaces {
                let slack: f64 = h
                    .normal
                    .iter()
                    .zip(center)
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    - h.offset;
                prop_assert!(slack > 0.0, "non-positive slack {slack}");
                prop_assert!(slack >= p.chebyshev_radius - 1e-9);
            }
        }
    }
}
