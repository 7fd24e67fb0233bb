//! Shared fixtures for the benchmark targets.

use num_complex::Complex64;
use sectoria::continuation::Problem;
use sectoria::expr::{parse, InterpolantExpr};
use sectoria::geometry::{Majorant, MajorantTerm};
use sectoria::kernel::ContourSpec;

pub fn exp_interpolant() -> InterpolantExpr {
    parse("exp(z1)", 1).unwrap()
}

pub fn exp_problem_1d() -> Problem {
    let majorant = Majorant::new(
        vec![MajorantTerm::new(1, vec![1.0], 0.0).unwrap()],
        1,
        0.5,
        1.0,
        0.0,
    )
    .unwrap();
    Problem::new(exp_interpolant(), majorant, ContourSpec::for_delta(0.5)).unwrap()
}

pub fn coordinate_majorant_2d() -> Majorant {
    Majorant::new(
        vec![
            MajorantTerm::new(1, vec![1.0, 0.0], 0.0).unwrap(),
            MajorantTerm::new(1, vec![0.0, 1.0], 0.0).unwrap(),
            MajorantTerm::new(1, vec![1.0, 1.0], 0.0).unwrap(),
        ],
        2,
        0.5,
        1.0,
        0.0,
    )
    .unwrap()
}

pub fn sample_point() -> Complex64 {
    Complex64::new(-1.0, 0.0)
}
