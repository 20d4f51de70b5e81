//! Command-line surface: subcommand output, exit codes, and agreement with
//! the library.

mod common;

use common::{config_path, synthetic_spec};
use pneugrip::cli::cli_main;
use pneugrip::grasp::{min_normal_force, STANDARD_GRAVITY};
use pneugrip::units;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let full: Vec<&str> = std::iter::once("pneugrip")
        .chain(args.iter().copied())
        .collect();
    let code = cli_main(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field(output: &str, key: &str) -> f64 {
    for line in output.lines() {
        if let Some(rest) = line.strip_prefix(&format!("{key} = ")) {
            return rest.parse().unwrap();
        }
    }
    panic!("missing field '{key}' in output:\n{output}");
}

fn finger() -> String {
    config_path("finger.conf").to_str().unwrap().to_string()
}

#[test]
fn mu_at_zero_pressure_reports_rim_friction() {
    let (code, out, _) = run(&[
        "mu",
        "--config",
        &finger(),
        "--pressure-kpa",
        "0",
        "--force-n",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("regime = rim"), "{out}");
    assert_eq!(field(&out, "mu_eff"), 0.2);
    assert_eq!(field(&out, "contact_area_mm2"), 0.0);
}

#[test]
fn mu_matches_library() {
    let (code, out, _) = run(&[
        "mu",
        "--config",
        &finger(),
        "--pressure-kpa",
        "75",
        "--force-n",
        "4",
    ]);
    assert_eq!(code, 0);
    let sol = pneugrip::contact_solve(&synthetic_spec(), 75e3, 4.0).unwrap();
    assert_eq!(field(&out, "mu_eff"), sol.mu_eff);
    assert_eq!(
        field(&out, "contact_area_mm2"),
        units::to_mm2(sol.contact_area)
    );
}

#[test]
fn bulge_exact_and_linear_models() {
    let (code, out, _) = run(&["bulge", "--config", &finger(), "--pressure-kpa", "50"]);
    assert_eq!(code, 0);
    let spec = synthetic_spec();
    let h = pneugrip::bulge_height_exact(&spec, 50e3).unwrap();
    assert_eq!(field(&out, "h_mm"), units::to_mm(h));
    let (code, out_linear, _) = run(&[
        "bulge",
        "--config",
        &finger(),
        "--pressure-kpa",
        "50",
        "--linear",
    ]);
    assert_eq!(code, 0);
    let h_linear = pneugrip::bulge_height_linear(&spec, 50e3).unwrap();
    assert_eq!(field(&out_linear, "h_mm"), units::to_mm(h_linear));
    assert!(field(&out_linear, "h_mm") >= field(&out, "h_mm"));
    // Flat membrane at zero pressure: infinite cap radius.
    let (code, out_flat, _) = run(&["bulge", "--config", &finger(), "--pressure-kpa", "0"]);
    assert_eq!(code, 0);
    assert!(out_flat.contains("r_mm = inf"), "{out_flat}");
}

#[test]
fn grasp_feasibility_output() {
    let (code, out, _) = run(&[
        "grasp",
        "--config",
        &finger(),
        "--mass-kg",
        "0.2",
        "--pressure-kpa",
        "100",
        "--force-n",
        "4",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("feasible = true"), "{out}");
    let margin = field(&out, "margin_n");
    let expect = 2.0
        * pneugrip::contact_solve(&synthetic_spec(), 100e3, 4.0)
            .unwrap()
            .friction_force
        - 0.2 * STANDARD_GRAVITY;
    assert_eq!(margin, expect);
}

#[test]
fn grasp_min_force_agrees_with_library() {
    let (code, out, _) = run(&[
        "grasp",
        "--config",
        &finger(),
        "--mass-kg",
        "0.2",
        "--pressure-kpa",
        "100",
        "--min-force",
    ]);
    assert_eq!(code, 0);
    let expect = min_normal_force(&synthetic_spec(), 0.2, 100e3, 2, 100.0).unwrap();
    assert_eq!(field(&out, "min_force_n"), expect);
}

#[test]
fn grasp_requires_exactly_one_mode() {
    let (code, _, err) = run(&[
        "grasp",
        "--config",
        &finger(),
        "--mass-kg",
        "0.2",
        "--pressure-kpa",
        "100",
    ]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&[
        "grasp",
        "--config",
        &finger(),
        "--mass-kg",
        "0.2",
        "--pressure-kpa",
        "100",
        "--force-n",
        "4",
        "--min-force",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn infeasible_grasp_exits_one() {
    let (code, _, err) = run(&[
        "grasp",
        "--config",
        &finger(),
        "--mass-kg",
        "500",
        "--pressure-kpa",
        "50",
        "--min-force",
        "--search-max-n",
        "10",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("infeasible"), "{err}");
}

#[test]
fn extract_mu_from_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    std::fs::write(
        &path,
        "time_s,fy_n,fz_n\n0.0,1.0,4.0\n0.1,2.5,5.0\n0.2,9.0,0.01\n",
    )
    .unwrap();
    let (code, out, _) = run(&["extract-mu", "--trace", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "mu"), 0.5);
    // Threshold above every |F_z|: no-contact model error.
    let (code, _, err) = run(&[
        "extract-mu",
        "--trace",
        path.to_str().unwrap(),
        "--threshold-n",
        "50",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("contact threshold"), "{err}");
}

#[test]
fn calibrate_writes_report() {
    let spec = synthetic_spec();
    let pressures: Vec<f64> = (0..12).map(|i| 125e3 * i as f64 / 11.0).collect();
    let curve = pneugrip::predict_mu_curve(&spec, &pressures, 4.0).unwrap();
    let mut csv = String::from("material,pressure_kpa,normal_force_n,mu\n");
    for (p, mu) in pressures.iter().zip(curve) {
        csv.push_str(&format!("steel,{},4,{}\n", units::to_kpa(*p), mu));
    }
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("samples.csv");
    std::fs::write(&data, csv).unwrap();
    let report_path = dir.path().join("fit.txt");
    let (code, _, err) = run(&[
        "calibrate",
        "--config",
        &finger(),
        "--data",
        data.to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
        "--fit",
        "tau_s,mu_rim",
    ]);
    assert_eq!(code, 0, "{err}");
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.contains("material = steel"), "{report}");
    assert!(report.contains("shear_strength_tau_s = "), "{report}");
    assert!(report.contains("converged = true"), "{report}");
    assert!(
        !report.contains("residual_stress_sigma0"),
        "unfitted parameter in report: {report}"
    );
}

#[test]
fn bad_fit_parameter_is_usage_error() {
    let (code, _, err) = run(&[
        "calibrate",
        "--config",
        &finger(),
        "--data",
        "x.csv",
        "--out",
        "y.txt",
        "--fit",
        "sigma0,warp_drive",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("warp_drive"), "{err}");
}

#[test]
fn config_parse_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.conf");
    std::fs::write(&path, "width_W = 6 mm\nmystery = 1\n").unwrap();
    let (code, _, err) = run(&[
        "mu",
        "--config",
        path.to_str().unwrap(),
        "--pressure-kpa",
        "0",
        "--force-n",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("mystery"), "{err}");
}

#[test]
fn missing_file_exits_one() {
    let (code, _, _) = run(&[
        "mu",
        "--config",
        "/nonexistent/finger.conf",
        "--pressure-kpa",
        "0",
        "--force-n",
        "1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two_and_help_exits_zero() {
    let (code, _, _) = run(&["mu", "--config"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("sweep"));
}

#[test]
fn binary_runs_end_to_end() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_pneugrip"))
        .args([
            "mu",
            "--config",
            &finger(),
            "--pressure-kpa",
            "125",
            "--force-n",
            "4",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("regime = "), "{stdout}");
}
