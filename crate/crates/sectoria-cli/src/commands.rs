//! Subcommand implementations. Each returns the process exit code; numeric
//! output goes to stdout, diagnostics to stderr.

use num_complex::Complex64;
use rayon::prelude::*;

use sectoria::continuation::{
    auto_overlap_grid, check_condition_1, check_condition_2, continue_1d, continue_nd,
    verify_overlap, ContinuationError, Problem,
};
use sectoria::geometry::{build_polytope, sigma_l, GeometryError, Polytope};
use sectoria::indicator::{
    default_theta_grid, estimate_indicator, radius_from_indicator, sector_from_boundary_growth,
    SectorSpec, SectorVerdict,
};
use sectoria::kernel::{
    residue_partial_sum_1d, residue_partial_sum_nd, BranchedPower, KernelError, ResiduePartialSum,
};

use crate::format::{complex_pair, g17};
use crate::problem::{load, LoadedProblem};
use crate::CliError;

pub fn sector(path: &str) -> Result<u8, CliError> {
    let LoadedProblem { problem, .. } = load(path)?;
    let poly =
        build_polytope(problem.majorant()).map_err(|e| CliError::input(format!("{path}: {e}")))?;

    let mut out = String::from("{\n  \"rays\": [");
    for (i, h) in poly.halfspaces.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push('[');
        out.push_str(
            &h.normal
                .iter()
                .map(|&x| g17(x))
                .collect::<Vec<_>>()
                .join(", "),
        );
        out.push(']');
    }
    out.push_str("],\n  \"offsets\": [");
    out.push_str(
        &poly
            .halfspaces
            .iter()
            .map(|h| g17(h.offset))
            .collect::<Vec<_>>()
            .join(", "),
    );
    out.push_str("],\n  \"interior_point\": ");
    match &poly.interior_point {
        Some(alpha) => {
            out.push('[');
            out.push_str(&alpha.iter().map(|&x| g17(x)).collect::<Vec<_>>().join(", "));
            out.push(']');
        }
        None => out.push_str("null"),
    }
    out.push_str(",\n  \"chebyshev_radius\": ");
    out.push_str(&g17(poly.chebyshev_radius));
    out.push_str("\n}");
    println!("{out}");

    Ok(if poly.interior_point.is_some() { 0 } else { 3 })
}

pub fn indicator(path: &str, r_max: f64, samples: usize) -> Result<u8, CliError> {
    let LoadedProblem { problem, .. } = load(path)?;
    if problem.dim() != 1 {
        return Err(CliError::input(format!(
            "{path}: the indicator subcommand needs a one-variable problem, got n = {}",
            problem.dim()
        )));
    }
    let grid = default_theta_grid();
    let est = estimate_indicator(problem.phi(), &grid, r_max, samples)
        .map_err(|e| CliError::input(format!("{path}: {e}")))?;

    eprintln!(
        "note: the estimator samples |theta| <= pi/2 only; the sector verdict \
         assumes phi is holomorphic on the closed right half-plane"
    );
    println!("theta,h_estimate");
    for (theta, h) in est.thetas.iter().zip(&est.values) {
        if h.is_infinite() {
            eprintln!(
                "warning: ray theta = {} flagged (phi singular on the ray)",
                g17(*theta)
            );
        }
        println!("{},{}", g17(*theta), g17(*h));
    }

    let sigma = match sector_from_boundary_growth(&est)
        .map_err(|e| CliError::numerical(format!("{path}: {e}")))?
    {
        SectorVerdict::Admissible(s) => s.sigma(),
        SectorVerdict::Rejected { value } => {
            eprintln!(
                "warning: sector condition rejected (boundary growth {} >= pi)",
                g17(value)
            );
            value
        }
    };
    let h0 = est.value_at(0.0).unwrap_or(f64::INFINITY);
    let radius = if h0.is_finite() {
        radius_from_indicator(h0)
    } else {
        f64::NAN // θ = 0 ray was flagged; no meaningful radius
    };
    println!("sigma={},R={}", g17(sigma), g17(radius));
    Ok(0)
}

enum DomainPath {
    Sigma(SectorSpec),
    Polytope(Box<Polytope>),
}

pub fn continue_points(
    path: &str,
    points_path: &str,
    tol: f64,
    force: bool,
) -> Result<u8, CliError> {
    let LoadedProblem { problem, sigma } = load(path)?;
    let n = problem.dim();
    let points = read_points(points_path, n)?;

    if !force {
        check_hypotheses(&problem)?;
    }

    let domain = match (n, sigma) {
        (1, Some(s)) => DomainPath::Sigma(s),
        (1, None) => DomainPath::Sigma(sigma_from_indicator(&problem, path)?),
        _ => {
            let poly = build_polytope(problem.majorant())
                .map_err(|e| CliError::input(format!("{path}: {e}")))?;
            if poly.interior_point.is_none() {
                eprintln!("error: the continuation domain has empty interior");
                return Ok(3);
            }
            DomainPath::Polytope(Box::new(poly))
        }
    };

    let results: Vec<Result<sectoria::continuation::ContinuationResult, ContinuationError>> =
        points
            .par_iter()
            .map(|z| match &domain {
                DomainPath::Sigma(s) => continue_1d(&problem, *s, z[0], tol),
                DomainPath::Polytope(poly) => continue_nd(&problem, poly, z, tol),
            })
            .collect();

    let mut header: Vec<String> = Vec::new();
    for j in 1..=n {
        header.push(format!("re_{j}"));
        header.push(format!("im_{j}"));
    }
    header.extend([
        "value_re".into(),
        "value_im".into(),
        "quad_error".into(),
        "in_domain".into(),
    ]);
    println!("{}", header.join(","));

    for (z, result) in points.iter().zip(results) {
        let mut fields: Vec<String> = z.iter().flat_map(|c| [g17(c.re), g17(c.im)]).collect();
        match result {
            Ok(r) => {
                fields.push(g17(r.value.re));
                fields.push(g17(r.value.im));
                fields.push(g17(r.quad_error));
                fields.push("true".into());
            }
            Err(e) if is_out_of_domain(&e) => {
                fields.extend(["".into(), "".into(), "".into(), "false".into()]);
            }
            Err(ContinuationError::HypothesisFailure(msg)) => {
                return Err(CliError::hypothesis(msg));
            }
            Err(e) => return Err(CliError::numerical(format!("at z = {z:?}: {e}"))),
        }
        println!("{}", fields.join(","));
    }
    Ok(0)
}

fn is_out_of_domain(e: &ContinuationError) -> bool {
    matches!(
        e,
        ContinuationError::OutsideSector { .. }
            | ContinuationError::OutsideDomain
            | ContinuationError::SubProblemOutside { .. }
            | ContinuationError::Kernel(KernelError::BranchCut)
            | ContinuationError::Kernel(KernelError::ZeroBase)
            | ContinuationError::Geometry(GeometryError::ZeroComponent(_))
    )
}

fn sigma_from_indicator(problem: &Problem, path: &str) -> Result<SectorSpec, CliError> {
    let est = estimate_indicator(problem.phi(), &default_theta_grid(), 50.0, 32)
        .map_err(|e| CliError::numerical(format!("{path}: {e}")))?;
    match sector_from_boundary_growth(&est)
        .map_err(|e| CliError::numerical(format!("{path}: {e}")))?
    {
        SectorVerdict::Admissible(s) => Ok(s),
        SectorVerdict::Rejected { value } => Err(CliError::hypothesis(format!(
            "estimated boundary growth {} >= pi: no admissible sector",
            g17(value)
        ))),
    }
}

fn check_hypotheses(problem: &Problem) -> Result<(), CliError> {
    for l in 1..=problem.dim() {
        let s = sigma_l(problem.majorant(), l);
        if s >= std::f64::consts::PI {
            return Err(CliError::hypothesis(format!(
                "sigma_{l} = {} >= pi: boundary sub-series is not continuable",
                g17(s)
            )));
        }
    }
    let map_err = |e: ContinuationError| match e {
        ContinuationError::SingularSample { location, source } => {
            CliError::hypothesis(format!("phi singular at sample {location:?}: {source}"))
        }
        other => CliError::numerical(other.to_string()),
    };
    let c1 = check_condition_1(problem, 200).map_err(map_err)?;
    if !c1.pass {
        return Err(CliError::hypothesis(format!(
            "growth condition 1 violated by {} at eta = {:?} (use --force to continue anyway)",
            g17(c1.max_violation),
            c1.worst
        )));
    }
    let c2 = check_condition_2(problem, 200).map_err(map_err)?;
    if !c2.pass {
        return Err(CliError::hypothesis(format!(
            "growth condition 2 violated by {} at zeta = {:?} (use --force to continue anyway)",
            g17(c2.max_violation),
            c2.worst
        )));
    }
    Ok(())
}

pub fn verify(path: &str, grid: usize, tol: f64, terms: usize) -> Result<u8, CliError> {
    let LoadedProblem { problem, .. } = load(path)?;
    let poly =
        build_polytope(problem.majorant()).map_err(|e| CliError::input(format!("{path}: {e}")))?;
    if poly.interior_point.is_none() {
        eprintln!("error: the continuation domain has empty interior");
        return Ok(3);
    }
    let per_axis = match grid {
        0 => {
            if problem.dim() == 1 {
                9
            } else {
                3
            }
        }
        g => g,
    };
    let points = auto_overlap_grid(&problem, &poly, per_axis)
        .map_err(|e| CliError::numerical(format!("{path}: {e}")))?;
    let quad_tol = (tol / 100.0).clamp(1e-12, 1e-6);

    let reports: Vec<_> = points
        .par_iter()
        .map(|z| verify_overlap(&problem, &poly, z, terms, quad_tol))
        .collect();

    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for (z, report) in points.iter().zip(reports) {
        let report = report.map_err(|e| CliError::numerical(format!("at z = {z:?}: {e}")))?;
        let pass = report.discrepancy <= tol;
        worst = worst.max(report.discrepancy);
        if !pass {
            failures += 1;
        }
        let coords: Vec<String> = z.iter().map(|c| complex_pair(*c)).collect();
        println!(
            "z=({}) discrepancy={} pass={}",
            coords.join(";"),
            g17(report.discrepancy),
            pass
        );
    }
    println!(
        "verified {} points, worst discrepancy {} (tolerance {})",
        points.len(),
        g17(worst),
        g17(tol)
    );
    Ok(if failures == 0 { 0 } else { 5 })
}

pub fn residue_check(path: &str, m_arg: &str, z_arg: &str, tol: f64) -> Result<u8, CliError> {
    let LoadedProblem { problem, .. } = load(path)?;
    let n = problem.dim();

    let m: Vec<u32> = m_arg
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("--m: {e}")))?;
    if m.len() != n {
        return Err(CliError::input(format!(
            "--m needs {n} value(s), got {}",
            m.len()
        )));
    }
    let floats: Vec<f64> = z_arg
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("--z: {e}")))?;
    if floats.len() != 2 * n {
        return Err(CliError::input(format!(
            "--z needs {} numbers (re,im per variable), got {}",
            2 * n,
            floats.len()
        )));
    }
    let z: Vec<Complex64> = floats
        .chunks(2)
        .map(|ri| Complex64::new(ri[0], ri[1]))
        .collect();
    let bps: Vec<BranchedPower> = z
        .iter()
        .map(|&zj| branch_for_residue(zj))
        .collect::<Result<_, _>>()?;

    let result: ResiduePartialSum = if n == 1 {
        residue_partial_sum_1d(problem.phi(), &bps[0], m[0], problem.spec())
    } else {
        residue_partial_sum_nd(problem.phi(), &bps, &m, problem.spec())
    }
    .map_err(|e| match e {
        KernelError::InvalidSpec(msg) => CliError::input(msg),
        other => CliError::numerical(other.to_string()),
    })?;

    let rel = result.abs_error() / (1.0 + result.direct_sum.norm());
    println!("integral={}", complex_pair(result.integral));
    println!("direct_sum={}", complex_pair(result.direct_sum));
    println!("abs_error={}", g17(result.abs_error()));
    println!("rel_error={}", g17(rel));
    println!("arc_magnitude={}", g17(result.arc_magnitude));
    Ok(if rel <= tol { 0 } else { 5 })
}

/// Positive real z sits on the continuation branch cut but is fine for the
/// finite-contour identity: take the closure argument 2π.
fn branch_for_residue(z: Complex64) -> Result<BranchedPower, CliError> {
    let attempt = if z.im == 0.0 && z.re > 0.0 {
        BranchedPower::with_arg(z, 2.0 * std::f64::consts::PI)
    } else {
        BranchedPower::new(z)
    };
    attempt.map_err(|e| CliError::input(format!("--z: {e}")))
}

fn read_points(path: &str, n: usize) -> Result<Vec<Vec<Complex64>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        // Tolerate a header row.
        if lineno == 0 && fields.first().is_some_and(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        if fields.len() != 2 * n {
            return Err(CliError::input(format!(
                "{path}: line {}: expected {} fields (re,im per variable), got {}",
                lineno + 1,
                2 * n,
                fields.len()
            )));
        }
        let mut coords = Vec::with_capacity(n);
        for pair in fields.chunks(2) {
            let re = pair[0].parse::<f64>().map_err(|e| {
                CliError::input(format!("{path}: line {}: `{}`: {e}", lineno + 1, pair[0]))
            })?;
            let im = pair[1].parse::<f64>().map_err(|e| {
                CliError::input(format!("{path}: line {}: `{}`: {e}", lineno + 1, pair[1]))
            })?;
            coords.push(Complex64::new(re, im));
        }
        points.push(coords);
    }
    if points.is_empty() {
        return Err(CliError::input(format!("{path}: no evaluation points")));
    }
    Ok(points)
}
