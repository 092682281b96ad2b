//! Exit-code and output-shape checks for the binary.

use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_harmonic-radius");

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(BIN).args(args).output().expect("spawn");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("radius"));
}

#[test]
fn unknown_flag_exits_one() {
    let (code, _, _) = run(&["radius", "--no-such-flag"]);
    assert_eq!(code, Some(1));
}

#[test]
fn unknown_theorem_exits_one() {
    let (code, _, stderr) = run(&["radius", "--theorem", "nope"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("unknown theorem"));
}

#[test]
fn unknown_psi_exits_one() {
    let (code, _, stderr) = run(&["radius", "--theorem", "univalence", "--psi", "zeta"]);
    assert_eq!(code, Some(1));
    assert!(stderr.contains("unknown psi"));
}

#[test]
fn invalid_parameter_exits_one() {
    let (code, _, _) = run(&[
        "radius", "--theorem", "strongly-starlike", "--alpha", "1.5",
    ]);
    assert_eq!(code, Some(1));
}

#[test]
fn io_failure_exits_two() {
    let (code, _, stderr) = run(&[
        "table1", "--output", "/no/such/dir/table.csv",
    ]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("/no/such/dir/table.csv"));
}

#[test]
fn failed_verification_exits_three() {
    // koebe-type map far beyond the sense-preserving radius
    let (code, stdout, _) = run(&[
        "verify", "--theorem", "sense-preserving", "--psi", "janowski:1,-1",
        "--dilatation", "identity", "--radius-override", "0.99", "--samples", "64",
    ]);
    assert_eq!(code, Some(3));
    assert!(stdout.contains("FAIL"));
}

#[test]
fn passing_verification_exits_zero() {
    let (code, stdout, _) = run(&[
        "verify", "--theorem", "fully-starlike", "--psi", "lemniscate",
        "--dilatation", "identity", "--samples", "64",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("pass"));
}

#[test]
fn counterexamples_exit_zero_when_expectations_hold() {
    let (code, stdout, _) = run(&["counterexamples", "--format", "json"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json");
    assert_eq!(v.as_array().map(|a| a.len()), Some(7));
}

#[test]
fn radius_text_shows_both_convex_readings() {
    let (code, stdout, _) = run(&[
        "radius", "--theorem", "fully-convex", "--psi", "kappa-exp",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("proof_consistent"));
    assert!(stdout.contains("table_printed"));
}

#[test]
fn plot_csv_has_twelve_digit_columns() {
    let (code, stdout, _) = run(&[
        "plot", "--psi", "kappa-exp", "--dilatation", "monomial:1,0",
        "--radius", "0.195106", "--samples", "64",
    ]);
    assert_eq!(code, Some(0));
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("curve_id,theta,re,im"));
    let first = lines.next().expect("data row");
    let fields: Vec<&str> = first.split(',').collect();
    assert_eq!(fields.len(), 4);
    for f in &fields[1..] {
        let frac = f.split('.').nth(1).expect("fractional digits");
        assert_eq!(frac.trim_start_matches('-').len(), 12);
    }
}

#[test]
fn winding_number_of_boundary_curve_is_one() {
    // the improved-radius disk image of the identity-coupled map winds
    // exactly once about the origin
    let (code, stdout, _) = run(&[
        "plot", "--psi", "lemniscate", "--dilatation", "identity",
        "--radius", "0.3524", "--samples", "512",
    ]);
    assert_eq!(code, Some(0));
    let boundary: Vec<(f64, f64)> = stdout
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("9,"))
        .map(|l| {
            let f: Vec<f64> = l.split(',').skip(2).map(|x| x.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .collect();
    assert_eq!(boundary.len(), 512);
    let mut total = 0.0;
    for i in 0..boundary.len() {
        let (x0, y0) = boundary[i];
        let (x1, y1) = boundary[(i + 1) % boundary.len()];
        let a0 = y0.atan2(x0);
        let a1 = y1.atan2(x1);
        let mut d = a1 - a0;
        while d > std::f64::consts::PI {
            d -= std::f64::consts::TAU;
        }
        while d < -std::f64::consts::PI {
            d += std::f64::consts::TAU;
        }
        total += d;
    }
    let winding = total / std::f64::consts::TAU;
    assert!((winding - 1.0).abs() < 1e-9, "winding {winding}");
}
