//! End-to-end tests of the binary: exit codes, output formats, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sectoria"))
}

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn problem(name: &str) -> String {
    problems_dir().join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sector_emits_interval_polytope() {
    let out = run(&["sector", &problem("exp_1d.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let offsets: Vec<f64> = v["offsets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    // g̃ = |η| → P = [1, 2π−1]: offsets {1, 1−2π} in some order.
    let two_pi = 2.0 * std::f64::consts::PI;
    assert!(offsets.iter().any(|&o| (o - 1.0).abs() < 1e-12));
    assert!(offsets.iter().any(|&o| (o - (1.0 - two_pi)).abs() < 1e-12));
    let center = v["interior_point"].as_array().unwrap();
    assert!((center[0].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-9);
    assert!(v["chebyshev_radius"].as_f64().unwrap() > 2.0);
}

#[test]
fn sector_reports_empty_interior_with_exit_3() {
    let out = run(&["sector", &problem("empty_interior.json")]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert!(v["interior_point"].is_null());
}

#[test]
fn malformed_json_exits_2() {
    let dir = std::env::temp_dir().join("sectoria-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{this is not json").unwrap();
    let out = run(&["sector", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn indicator_summary_matches_the_worked_example() {
    let out = run(&["indicator", &problem("exp_1d.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "theta,h_estimate");
    let summary = text.lines().last().unwrap();
    assert!(summary.starts_with("sigma="), "summary line: {summary}");
    let parts: Vec<&str> = summary.split(',').collect();
    let sigma: f64 = parts[0].strip_prefix("sigma=").unwrap().parse().unwrap();
    let radius: f64 = parts[1].strip_prefix("R=").unwrap().parse().unwrap();
    assert!(sigma.abs() <= 0.05);
    assert!((radius - (-1.0f64).exp()).abs() <= 0.01);
    // 65 data rows + header + summary.
    assert_eq!(text.lines().count(), 67);
}

#[test]
fn indicator_rejects_multivariate_problems() {
    let out = run(&["indicator", &problem("exp_2d.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn indicator_flags_singular_rays_but_exits_0() {
    let dir = std::env::temp_dir().join("sectoria-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("singular.json");
    // Pole at ζ = 25 sits exactly on the θ = 0 radius grid (50/2).
    std::fs::write(
        &path,
        r#"{"version":1,"n":1,"phi":"1/(z1-25)","majorant":{"terms":[{"eps":1,"a":[1.0],"a0":0.0}],"delta":0.5,"b":1.0,"C":0.0}}"#,
    )
    .unwrap();
    let out = run(&["indicator", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.lines().any(|l| l.ends_with(",inf")),
        "no flagged ray in:\n{text}"
    );
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("warning"),
        "expected a warning on stderr, got: {err}"
    );
}

#[test]
fn continue_reproduces_the_closed_form_and_flags_the_cut() {
    let out = run(&[
        "continue",
        &problem("exp_1d.json"),
        &problem("points_1d.csv"),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "re_1,im_1,value_re,value_im,quad_error,in_domain");
    assert_eq!(rows.len(), 6);

    // Row 1: z = −1 → 1/(1+e).
    let fields: Vec<&str> = rows[1].split(',').collect();
    let value_re: f64 = fields[2].parse().unwrap();
    assert!((value_re - 1.0 / (1.0 + std::f64::consts::E)).abs() < 1e-6);
    assert_eq!(fields[5], "true");

    // Last row: z = 0.5 on the positive real axis → out of domain, empty value.
    let fields: Vec<&str> = rows[5].split(',').collect();
    assert_eq!(fields[2], "");
    assert_eq!(fields[3], "");
    assert_eq!(fields[5], "false");
}

#[test]
fn continue_2d_points() {
    let out = run(&[
        "continue",
        &problem("exp_2d.json"),
        &problem("points_2d.csv"),
        "--tol",
        "1e-4",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(
        rows[0],
        "re_1,im_1,re_2,im_2,value_re,value_im,quad_error,in_domain"
    );
    // Row 1: z = (−1, −1) → 1/(1+e)².
    let fields: Vec<&str> = rows[1].split(',').collect();
    let value_re: f64 = fields[4].parse().unwrap();
    let expected = 1.0 / (1.0 + std::f64::consts::E).powi(2);
    assert!(
        (value_re - expected).abs() < 1e-4,
        "{value_re} vs {expected}"
    );
}

#[test]
fn hypothesis_failure_exits_4_and_force_overrides() {
    let dir = std::env::temp_dir().join("sectoria-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    // φ = exp(2ζ) with budget b = 1 violates growth condition 2.
    let path = dir.join("exp2.json");
    std::fs::write(
        &path,
        r#"{"version":1,"n":1,"phi":"exp(2*z1)","majorant":{"terms":[{"eps":1,"a":[2.0],"a0":0.0}],"delta":0.5,"b":1.0,"C":0.0},"sigma":0.0}"#,
    )
    .unwrap();
    let pts = dir.join("pt.csv");
    std::fs::write(&pts, "-0.1,0\n").unwrap();

    let out = run(&["continue", path.to_str().unwrap(), pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));

    // --force: the continuation itself is still correct (f = 1/(1−e²z)).
    let out = run(&[
        "continue",
        path.to_str().unwrap(),
        pts.to_str().unwrap(),
        "--force",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let fields: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let value_re: f64 = fields[2].parse().unwrap();
    let expected = 1.0 / (1.0 + 0.1 * std::f64::consts::E.powi(2));
    assert!(
        (value_re - expected).abs() < 1e-5,
        "{value_re} vs {expected}"
    );
}

#[test]
fn sigma_l_at_least_pi_exits_4() {
    let dir = std::env::temp_dir().join("sectoria-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sigma_l.json");
    std::fs::write(
        &path,
        r#"{"version":1,"n":2,"phi":"exp(z1+z2)","majorant":{"terms":[{"eps":1,"a":[3.3,0.0],"a0":0.0},{"eps":1,"a":[0.0,1.0],"a0":0.0}],"delta":0.5,"b":1.0,"C":0.0}}"#,
    )
    .unwrap();
    let pts = dir.join("pt2.csv");
    std::fs::write(&pts, "-1,0,-1,0\n").unwrap();
    let out = run(&["continue", path.to_str().unwrap(), pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn malformed_points_file_exits_2_with_line_diagnostic() {
    let dir = std::env::temp_dir().join("sectoria-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let pts = dir.join("short.csv");
    std::fs::write(&pts, "-1,0\n-2\n").unwrap();
    let out = run(&["continue", &problem("exp_1d.json"), pts.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 2"),
        "diagnostic missing line number: {err}"
    );
}

#[test]
fn verify_passes_on_the_worked_problems() {
    for name in ["geometric_1d.json", "exp_1d.json"] {
        let out = run(&["verify", &problem(name), "--grid", "9"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name} stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = stdout(&out);
        assert_eq!(text.lines().filter(|l| l.starts_with("z=")).count(), 9);
        assert!(text
            .lines()
            .last()
            .unwrap()
            .starts_with("verified 9 points"));
    }
}

#[test]
fn verify_with_impossible_tolerance_fails_with_exit_5() {
    // 1e-15 is below what tensor-product quadrature can deliver in 2-D.
    let out = run(&["verify", &problem("exp_2d.json"), "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn residue_check_geometric() {
    let out = run(&[
        "residue-check",
        &problem("geometric_1d.json"),
        "--m",
        "3",
        "--z",
        "0.5,0",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let direct = text
        .lines()
        .find(|l| l.starts_with("direct_sum="))
        .unwrap()
        .strip_prefix("direct_sum=")
        .unwrap();
    let re: f64 = direct.split(',').next().unwrap().parse().unwrap();
    assert!((re - 0.875).abs() < 1e-12);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = run(&["sector", &problem("exp_2d.json")]);
    let b = run(&["sector", &problem("exp_2d.json")]);
    assert_eq!(a.stdout, b.stdout);

    let a = run(&[
        "continue",
        &problem("exp_1d.json"),
        &problem("points_1d.csv"),
    ]);
    let b = run(&[
        "continue",
        &problem("exp_1d.json"),
        &problem("points_1d.csv"),
    ]);
    assert_eq!(a.stdout, b.stdout);

    // Thread-count caps must not change the output bytes.
    let c = bin()
        .args([
            "continue",
            &problem("exp_1d.json"),
            &problem("points_1d.csv"),
        ])
        .env("SECTORIA_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}
