//! Friction-coefficient extraction and model calibration.
//!
//! Measured force traces yield friction coefficients as the maximum
//! `|F_y| / |F_z|` ratio over the sliding window. Sets of measured
//! `(pressure, load, mu)` samples then calibrate the membrane parameters the
//! hardware leaves unquantified: residual stress, pressure-stiffening factor,
//! interfacial shear strength, rim friction, and optionally the
//! zero-pressure modulus.
//!
//! The fit is damped least squares over log-transformed parameters (logit
//! for the rim coefficient), with a central-difference Jacobian that detects
//! steps straddling a contact-regime boundary and re-centers them one-sided.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::contact::{contact_solve_with, ContactRegime};
use crate::error::{Error, Result};
use crate::membrane::{HeightModel, MembraneSpec};

/// Default contact threshold for [`extract_mu`] (N): well above force-sensor
/// noise floors, far below experimental loads.
pub const DEFAULT_CONTACT_THRESHOLD: f64 = 0.05;

/// One sample of a force trace: time, tangential force, normal force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    pub time: f64,
    pub fy: f64,
    pub fz: f64,
}

/// A recorded force time series with strictly increasing, finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceTrace {
    samples: Vec<TraceSample>,
}

impl ForceTrace {
    pub fn new(samples: Vec<TraceSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("force trace must not be empty".into()));
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.time.is_finite() && s.fy.is_finite() && s.fz.is_finite()) {
                return Err(Error::Domain(format!(
                    "non-finite value in trace sample {i}"
                )));
            }
            if i > 0 && s.time <= samples[i - 1].time {
                return Err(Error::Domain(format!(
                    "trace times must be strictly increasing (sample {i})"
                )));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[TraceSample] {
        &self.samples
    }

    /// Parses the `time_s,fy_n,fz_n` CSV format.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "time_s,fy_n,fz_n")) => {}
            Some((_, header)) => {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected header 'time_s,fy_n,fz_n', got '{header}'"),
                })
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "empty trace file".into(),
                })
            }
        }
        let mut samples = Vec::new();
        for (i, row) in lines {
            let line = i + 1;
            if row.is_empty() {
                continue;
            }
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected 3 fields, got {}", fields.len()),
                });
            }
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid {what} '{s}'"),
                })
            };
            samples.push(TraceSample {
                time: parse(fields[0], "time")?,
                fy: parse(fields[1], "tangential force")?,
                fz: parse(fields[2], "normal force")?,
            });
        }
        Self::new(samples)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_csv_str(&std::fs::read_to_string(path)?)
    }
}

/// Friction coefficient of a trace: maximum `|F_y| / |F_z|` over all samples
/// whose normal force magnitude reaches the contact threshold.
pub fn extract_mu(trace: &ForceTrace, contact_threshold: f64) -> Result<f64> {
    if !contact_threshold.is_finite() || contact_threshold <= 0.0 {
        return Err(Error::Domain(format!(
            "contact threshold {contact_threshold} N must be positive"
        )));
    }
    let mut best: Option<f64> = None;
    for s in trace.samples() {
        if s.fz.abs() >= contact_threshold {
            let ratio = s.fy.abs() / s.fz.abs();
            best = Some(best.map_or(ratio, |b: f64| b.max(ratio)));
        }
    }
    best.ok_or(Error::NoContact)
}

/// One measured friction point of a pressure sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct FrictionSample {
    /// Internal pressure (Pa).
    pub pressure: f64,
    /// Normal load during the measurement (N).
    pub normal_force: f64,
    /// Measured friction coefficient.
    pub mu_measured: f64,
    /// Counter-surface material of this curve.
    pub material_label: String,
}

impl FrictionSample {
    pub fn validate(&self) -> Result<()> {
        if !(self.pressure >= 0.0 && self.pressure.is_finite()) {
            return Err(Error::Domain(format!(
                "sample pressure {} Pa must be nonnegative",
                self.pressure
            )));
        }
        if !(self.normal_force > 0.0 && self.normal_force.is_finite()) {
            return Err(Error::Domain(format!(
                "sample normal force {} N must be positive",
                self.normal_force
            )));
        }
        if !(self.mu_measured > 0.0 && self.mu_measured.is_finite()) {
            return Err(Error::Domain(format!(
                "sample mu {} must be positive",
                self.mu_measured
            )));
        }
        Ok(())
    }
}

/// Parses the `material,pressure_kpa,normal_force_n,mu` CSV format.
pub fn parse_friction_samples(text: &str) -> Result<Vec<FrictionSample>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "material,pressure_kpa,normal_force_n,mu")) => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "expected header 'material,pressure_kpa,normal_force_n,mu', got '{header}'"
                ),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty sample file".into(),
            })
        }
    }
    let mut samples = Vec::new();
    for (i, row) in lines {
        let line = i + 1;
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let material = fields[0].trim();
        if material.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "empty material label".into(),
            });
        }
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid {what} '{s}'"),
            })
        };
        let sample = FrictionSample {
            pressure: crate::units::from_kpa(parse(fields[1], "pressure")?),
            normal_force: parse(fields[2], "normal force")?,
            mu_measured: parse(fields[3], "mu")?,
            material_label: material.to_string(),
        };
        sample.validate().map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        samples.push(sample);
    }
    Ok(samples)
}

pub fn read_friction_samples(path: impl AsRef<Path>) -> Result<Vec<FrictionSample>> {
    parse_friction_samples(&std::fs::read_to_string(path)?)
}

/// Model friction coefficients along a pressure sweep at constant load.
pub fn predict_mu_curve_with(
    spec: &MembraneSpec,
    model: HeightModel,
    pressures: &[f64],
    normal_force: f64,
) -> Result<Vec<f64>> {
    pressures
        .iter()
        .map(|&p| crate::contact::friction_coefficient_with(spec, model, p, normal_force))
        .collect()
}

/// [`predict_mu_curve_with`] under the default exact height model.
pub fn predict_mu_curve(
    spec: &MembraneSpec,
    pressures: &[f64],
    normal_force: f64,
) -> Result<Vec<f64>> {
    predict_mu_curve_with(spec, HeightModel::Exact, pressures, normal_force)
}

/// Which membrane parameters a fit adjusts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FitMask {
    pub sigma0: bool,
    pub eta: bool,
    pub tau_s: bool,
    pub mu_rim: bool,
    pub e0: bool,
}

impl FitMask {
    /// The default fitted set: the four parameters the bench leaves
    /// unquantified, with geometry and moduli held at configured values.
    pub fn standard() -> Self {
        Self {
            sigma0: true,
            eta: true,
            tau_s: true,
            mu_rim: true,
            e0: false,
        }
    }

    pub fn count(&self) -> usize {
        [self.sigma0, self.eta, self.tau_s, self.mu_rim, self.e0]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    fn params(&self) -> Vec<FitParam> {
        let mut out = Vec::new();
        if self.sigma0 {
            out.push(FitParam::Sigma0);
        }
        if self.eta {
            out.push(FitParam::Eta);
        }
        if self.tau_s {
            out.push(FitParam::TauS);
        }
        if self.mu_rim {
            out.push(FitParam::MuRim);
        }
        if self.e0 {
            out.push(FitParam::E0);
        }
        out
    }
}

impl FromStr for FitMask {
    type Err = String;

    /// Comma-separated parameter names: `sigma0`, `eta`, `tau_s`, `mu_rim`,
    /// `e0`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut mask = FitMask::default();
        for name in s.split(',') {
            match name.trim() {
                "sigma0" => mask.sigma0 = true,
                "eta" => mask.eta = true,
                "tau_s" => mask.tau_s = true,
                "mu_rim" => mask.mu_rim = true,
                "e0" => mask.e0 = true,
                other => {
                    return Err(format!(
                        "unknown fit parameter '{other}' (expected sigma0, eta, tau_s, mu_rim, e0)"
                    ))
                }
            }
        }
        Ok(mask)
    }
}

impl fmt::Display for FitMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.params().iter().map(|p| p.cli_name()).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FitParam {
    Sigma0,
    Eta,
    TauS,
    MuRim,
    E0,
}

impl FitParam {
    fn cli_name(self) -> &'static str {
        match self {
            FitParam::Sigma0 => "sigma0",
            FitParam::Eta => "eta",
            FitParam::TauS => "tau_s",
            FitParam::MuRim => "mu_rim",
            FitParam::E0 => "e0",
        }
    }

    /// Configuration-file key of the underlying field.
    fn report_name(self) -> &'static str {
        match self {
            FitParam::Sigma0 => "residual_stress_sigma0",
            FitParam::Eta => "stiffness_pressure_factor_eta",
            FitParam::TauS => "shear_strength_tau_s",
            FitParam::MuRim => "rim_friction_mu_rim",
            FitParam::E0 => "zero_pressure_modulus_E0",
        }
    }

    fn get(self, spec: &MembraneSpec) -> f64 {
        match self {
            FitParam::Sigma0 => spec.residual_stress_sigma0,
            FitParam::Eta => spec.stiffness_pressure_factor_eta,
            FitParam::TauS => spec.shear_strength_tau_s,
            FitParam::MuRim => spec.rim_friction_mu_rim,
            FitParam::E0 => spec.zero_pressure_modulus_e0,
        }
    }

    fn set(self, spec: &mut MembraneSpec, value: f64) {
        match self {
            FitParam::Sigma0 => spec.residual_stress_sigma0 = value,
            FitParam::Eta => spec.stiffness_pressure_factor_eta = value,
            FitParam::TauS => spec.shear_strength_tau_s = value,
            FitParam::MuRim => spec.rim_friction_mu_rim = value,
            FitParam::E0 => spec.zero_pressure_modulus_e0 = value,
        }
    }

    /// Model value -> unconstrained internal coordinate.
    fn encode(self, value: f64) -> f64 {
        match self {
            // Logit over [0, 2] keeps the rim coefficient bounded.
            FitParam::MuRim => {
                let x = (value / 2.0).clamp(1e-12, 1.0 - 1e-12);
                (x / (1.0 - x)).ln()
            }
            // Log keeps the rest strictly positive.
            _ => value.ln(),
        }
    }

    /// Internal coordinate -> model value.
    fn decode(self, u: f64) -> f64 {
        match self {
            FitParam::MuRim => 2.0 / (1.0 + (-u).exp()),
            _ => u.exp(),
        }
    }
}

/// Iteration budget and convergence thresholds of [`fit_parameters`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    /// Relative cost-decrease threshold.
    pub cost_tol: f64,
    /// Gradient-norm threshold.
    pub grad_tol: f64,
    pub height_model: HeightModel,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            cost_tol: 1e-10,
            grad_tol: 1e-8,
            height_model: HeightModel::Exact,
        }
    }
}

/// Outcome of one least-squares fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Template spec with the fitted parameters substituted.
    pub spec: MembraneSpec,
    /// Which parameters were adjusted.
    pub mask: FitMask,
    /// Root-mean-square residual in mu units.
    pub rms_residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Relative step of the central-difference Jacobian.
const JACOBIAN_REL_STEP: f64 = 1e-6;
/// Initial Levenberg damping.
const LAMBDA_INIT: f64 = 1e-3;
/// Damping escalation ceiling; beyond this the step is declared stuck.
const LAMBDA_MAX: f64 = 1e12;

struct Evaluation {
    predictions: Vec<f64>,
    regimes: Vec<ContactRegime>,
    residuals: Vec<f64>,
    cost: f64,
}

fn evaluate(
    template: &MembraneSpec,
    params: &[FitParam],
    u: &[f64],
    samples: &[FrictionSample],
    model: HeightModel,
) -> Result<Evaluation> {
    let mut spec = *template;
    for (param, &ui) in params.iter().zip(u) {
        param.set(&mut spec, param.decode(ui));
    }
    let mut predictions = Vec::with_capacity(samples.len());
    let mut regimes = Vec::with_capacity(samples.len());
    let mut residuals = Vec::with_capacity(samples.len());
    let mut cost = 0.0;
    for sample in samples {
        let sol = contact_solve_with(&spec, model, sample.pressure, sample.normal_force)?;
        let r = sol.mu_eff - sample.mu_measured;
        predictions.push(sol.mu_eff);
        regimes.push(sol.regime);
        residuals.push(r);
        cost += r * r;
    }
    Ok(Evaluation {
        predictions,
        regimes,
        residuals,
        cost,
    })
}

/// Solves `a x = b` for a small symmetric system by Gaussian elimination
/// with partial pivoting; `None` when a pivot vanishes.
#[allow(clippy::needless_range_loop)]
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut sum = b[col];
        for k in col + 1..n {
            sum -= a[col][k] * x[k];
        }
        x[col] = sum / a[col][col];
    }
    Some(x)
}

/// Fits the masked parameters of `template` to the samples by damped least
/// squares, minimizing the sum of squared `predicted - measured` residuals.
///
/// Positivity is enforced by optimizing log-transformed parameters (logit
/// over `[0, 2]` for the rim coefficient), so results never violate the
/// membrane invariants. Deterministic for identical inputs; a fit that
/// stalls under damping escalation reports `converged = false` rather than
/// erroring.
pub fn fit_parameters(
    template: &MembraneSpec,
    samples: &[FrictionSample],
    mask: FitMask,
    options: &FitOptions,
) -> Result<FitResult> {
    template.validate()?;
    for sample in samples {
        sample.validate()?;
    }
    let params = mask.params();
    if samples.len() < params.len() {
        return Err(Error::InsufficientSamples {
            needed: params.len(),
            got: samples.len(),
        });
    }
    let model = options.height_model;

    if params.is_empty() {
        let eval = evaluate(template, &params, &[], samples, model)?;
        return Ok(FitResult {
            spec: *template,
            mask,
            rms_residual: rms(eval.cost, samples.len()),
            iterations: 0,
            converged: true,
        });
    }

    let distinct_pressures = {
        let mut ps: Vec<f64> = samples.iter().map(|s| s.pressure).collect();
        ps.sort_by(f64::total_cmp);
        ps.dedup();
        ps.len()
    };
    if distinct_pressures < 2 {
        return Err(Error::Domain(
            "calibration needs samples at two or more distinct pressures".into(),
        ));
    }
    for param in &params {
        if param.get(template) <= 0.0 {
            return Err(Error::Domain(format!(
                "fitted parameter {} requires a positive initial value",
                param.cli_name()
            )));
        }
    }

    let mut u: Vec<f64> = params.iter().map(|p| p.encode(p.get(template))).collect();
    let mut eval = evaluate(template, &params, &u, samples, model)?;
    let mut lambda = LAMBDA_INIT;
    let mut iterations = 0;
    let mut converged = eval.cost == 0.0;

    while !converged && iterations < options.max_iterations {
        iterations += 1;

        // Central-difference Jacobian; re-center one-sided when a step
        // crosses a regime boundary for a sample.
        let m = samples.len();
        let k = params.len();
        let mut jac = vec![vec![0.0; k]; m];
        for j in 0..k {
            let h = JACOBIAN_REL_STEP * u[j].abs().max(1.0);
            let mut up = u.clone();
            up[j] += h;
            let mut dn = u.clone();
            dn[j] -= h;
            let plus = evaluate(template, &params, &up, samples, model)?;
            let minus = evaluate(template, &params, &dn, samples, model)?;
            for (i, row) in jac.iter_mut().enumerate() {
                row[j] = if plus.regimes[i] == minus.regimes[i] {
                    (plus.predictions[i] - minus.predictions[i]) / (2.0 * h)
                } else if plus.regimes[i] == eval.regimes[i] {
                    (plus.predictions[i] - eval.predictions[i]) / h
                } else {
                    (eval.predictions[i] - minus.predictions[i]) / h
                };
            }
        }

        // Gradient of the cost: J^T r.
        let mut grad = vec![0.0; k];
        for j in 0..k {
            grad[j] = (0..m).map(|i| jac[i][j] * eval.residuals[i]).sum();
        }
        let grad_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if grad_norm < options.grad_tol {
            converged = true;
            break;
        }

        // Normal equations J^T J, damped on the diagonal.
        let mut jtj = vec![vec![0.0; k]; k];
        for a in 0..k {
            for b in a..k {
                let v: f64 = (0..m).map(|i| jac[i][a] * jac[i][b]).sum();
                jtj[a][b] = v;
                jtj[b][a] = v;
            }
        }

        let mut stepped = false;
        while lambda <= LAMBDA_MAX {
            let mut damped = jtj.clone();
            for (j, row) in damped.iter_mut().enumerate() {
                let scale = if jtj[j][j] > 0.0 { jtj[j][j] } else { 1.0 };
                row[j] += lambda * scale;
            }
            let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
            if let Some(step) = solve_linear(damped, rhs) {
                let trial: Vec<f64> = u.iter().zip(&step).map(|(a, d)| a + d).collect();
                if trial.iter().all(|v| v.is_finite()) {
                    let trial_eval = evaluate(template, &params, &trial, samples, model)?;
                    if trial_eval.cost < eval.cost {
                        let decrease =
                            (eval.cost - trial_eval.cost) / eval.cost.max(f64::MIN_POSITIVE);
                        u = trial;
                        eval = trial_eval;
                        lambda = (lambda / 10.0).max(1e-12);
                        stepped = true;
                        if decrease < options.cost_tol || eval.cost == 0.0 {
                            converged = true;
                        }
                        break;
                    }
                }
            }
            lambda *= 10.0;
        }
        if !stepped {
            // Singular or stalled after escalating the damping all the way.
            break;
        }
    }

    let mut spec = *template;
    for (param, &ui) in params.iter().zip(&u) {
        param.set(&mut spec, param.decode(ui));
    }
    Ok(FitResult {
        spec,
        mask,
        rms_residual: rms(eval.cost, samples.len()),
        iterations,
        converged,
    })
}

fn rms(cost: f64, n: usize) -> f64 {
    (cost / n as f64).sqrt()
}

/// Fits each material's samples independently, sharing the template
/// geometry; results are keyed by material label.
pub fn fit_by_material(
    template: &MembraneSpec,
    samples: &[FrictionSample],
    mask: FitMask,
    options: &FitOptions,
) -> Result<BTreeMap<String, FitResult>> {
    let mut groups: BTreeMap<String, Vec<FrictionSample>> = BTreeMap::new();
    for sample in samples {
        groups
            .entry(sample.material_label.clone())
            .or_default()
            .push(sample.clone());
    }
    let mut results = BTreeMap::new();
    for (label, group) in groups {
        let result = fit_parameters(template, &group, mask, options)?;
        results.insert(label, result);
    }
    Ok(results)
}

/// Renders fit results as key-value text, one block per material.
pub fn fit_report(results: &BTreeMap<String, FitResult>) -> String {
    let mut out = String::new();
    for (i, (label, result)) in results.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("material = {label}\n"));
        for param in result.mask.params() {
            out.push_str(&format!(
                "{} = {}\n",
                param.report_name(),
                param.get(&result.spec)
            ));
        }
        out.push_str(&format!("rms_residual = {}\n", result.rms_residual));
        out.push_str(&format!("iterations = {}\n", result.iterations));
        out.push_str(&format!("converged = {}\n", result.converged));
    }
    out
}

pub fn write_fit_report(
    path: impl AsRef<Path>,
    results: &BTreeMap<String, FitResult>,
) -> Result<()> {
    std::fs::write(path, fit_report(results))?;
    Ok(())
}
