use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use sectoria::continuation::continue_1d;
use sectoria::expr::parse;
use sectoria::geometry::build_polytope;
use sectoria::indicator::SectorSpec;
use sectoria::kernel::{kernel_1d, residue_partial_sum_1d, BranchedPower, ContourSpec};
use sectoria_bench::{coordinate_majorant_2d, exp_interpolant, exp_problem_1d, sample_point};

fn bench_parse_eval(c: &mut Criterion) {
    let src = "exp(0.3*z1) + (2+3*i)*sin(z1)^2 - z1/(1+z1^2)";
    c.bench_function("parse medium expression", |b| {
        b.iter(|| parse(black_box(src), 1).unwrap())
    });
    let phi = parse(src, 1).unwrap();
    let zeta = [Complex64::new(0.7, -1.3)];
    c.bench_function("eval medium expression", |b| {
        b.iter(|| phi.eval(black_box(&zeta)).unwrap())
    });
}

fn bench_kernel(c: &mut Criterion) {
    let bp = BranchedPower::new(sample_point()).unwrap();
    let zeta = Complex64::new(0.4, 7.3);
    c.bench_function("kernel_1d", |b| {
        b.iter(|| kernel_1d(black_box(zeta), &bp, 0.125).unwrap())
    });
}

fn bench_residue(c: &mut Criterion) {
    let phi = exp_interpolant();
    let bp = BranchedPower::new(Complex64::new(-0.2, 0.0)).unwrap();
    let spec = ContourSpec::default();
    c.bench_function("residue partial sum m=3", |b| {
        b.iter(|| residue_partial_sum_1d(&phi, &bp, black_box(3), &spec).unwrap())
    });
}

fn bench_continuation(c: &mut Criterion) {
    let p = exp_problem_1d();
    let sector = SectorSpec::new(0.0).unwrap();
    c.bench_function("continue_1d at z=-1, tol 1e-6", |b| {
        b.iter(|| continue_1d(&p, sector, black_box(sample_point()), 1e-6).unwrap())
    });
}

fn bench_polytope(c: &mut Criterion) {
    let m = coordinate_majorant_2d();
    c.bench_function("build_polytope 2-D (3 terms)", |b| {
        b.iter(|| build_polytope(black_box(&m)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_parse_eval,
    bench_kernel,
    bench_residue,
    bench_continuation,
    bench_polytope
);
criterion_main!(benches);
