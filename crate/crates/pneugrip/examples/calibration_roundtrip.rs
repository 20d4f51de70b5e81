//! Calibrate membrane parameters from a synthetic friction curve.
//!
//! Generates mu(p) samples from a known spec, perturbs the four fitted
//! parameters by 50%, and lets the damped least-squares fit recover the
//! truth. With real bench data, feed a CSV through `pneugrip calibrate`
//! instead; the math is identical.
//!
//! Run with: cargo run --example calibration_roundtrip

use pneugrip::calibration::{fit_parameters, FitMask, FitOptions};
use pneugrip::config::load_membrane_spec;
use pneugrip::{predict_mu_curve, units, FrictionSample};

fn main() -> pneugrip::Result<()> {
    let config = format!("{}/configs/finger.conf", env!("CARGO_MANIFEST_DIR"));
    let truth = load_membrane_spec(&config)?;

    // Twenty noiseless samples across the bench pressure range at 4 N.
    let normal_force = 4.0;
    let pressures: Vec<f64> = (0..20)
        .map(|i| units::from_kpa(125.0 * i as f64 / 19.0))
        .collect();
    let curve = predict_mu_curve(&truth, &pressures, normal_force)?;
    let samples: Vec<FrictionSample> = pressures
        .iter()
        .zip(&curve)
        .map(|(&pressure, &mu_measured)| FrictionSample {
            pressure,
            normal_force,
            mu_measured,
            material_label: "synthetic".into(),
        })
        .collect();

    let mut guess = truth;
    guess.residual_stress_sigma0 *= 1.5;
    guess.stiffness_pressure_factor_eta *= 1.5;
    guess.shear_strength_tau_s *= 1.5;
    guess.rim_friction_mu_rim *= 1.5;

    println!(
        "fitting sigma0, eta, tau_s, mu_rim from {} samples...\n",
        samples.len()
    );
    let result = fit_parameters(
        &guess,
        &samples,
        FitMask::standard(),
        &FitOptions::default(),
    )?;

    println!(
        "{:<12} {:>12} {:>12} {:>12} {:>10}",
        "parameter", "truth", "guess", "fitted", "rel err"
    );
    let rows = [
        (
            "sigma0",
            truth.residual_stress_sigma0,
            guess.residual_stress_sigma0,
            result.spec.residual_stress_sigma0,
        ),
        (
            "eta",
            truth.stiffness_pressure_factor_eta,
            guess.stiffness_pressure_factor_eta,
            result.spec.stiffness_pressure_factor_eta,
        ),
        (
            "tau_s",
            truth.shear_strength_tau_s,
            guess.shear_strength_tau_s,
            result.spec.shear_strength_tau_s,
        ),
        (
            "mu_rim",
            truth.rim_friction_mu_rim,
            guess.rim_friction_mu_rim,
            result.spec.rim_friction_mu_rim,
        ),
    ];
    for (name, want, start, got) in rows {
        println!(
            "{name:<12} {want:>12.5e} {start:>12.5e} {got:>12.5e} {:>10.2e}",
            (got / want - 1.0).abs()
        );
    }
    println!(
        "\nconverged = {}, iterations = {}, rms residual = {:.3e}",
        result.converged, result.iterations, result.rms_residual
    );
    Ok(())
}
