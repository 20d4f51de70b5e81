//! Grasp feasibility against payload weight.
//!
//! A grasp holds when the total friction generated by the fingers meets the
//! payload weight, `n * F_f(N, p) >= m * g`. This module evaluates that
//! predicate, solves for the minimum normal force that satisfies it at a
//! given pressure, and estimates stochastic success rates over repeated
//! noisy trials.

use crate::contact::contact_solve;
use crate::error::{Error, Result};
use crate::membrane::MembraneSpec;
use crate::noise;

/// Standard gravitational acceleration (m/s^2).
pub const STANDARD_GRAVITY: f64 = 9.81;

/// Absolute tolerance of the minimum-force search (N).
pub const MIN_FORCE_TOL: f64 = 1e-9;

/// Grid resolution of the exhaustive fallback scan in [`min_normal_force`].
pub const MIN_FORCE_SCAN_POINTS: usize = 100_000;

/// One candidate grasp: payload, finger count, and the per-finger actuation
/// point `(N, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraspScenario {
    /// Payload mass (kg).
    pub mass: f64,
    /// Gravitational acceleration (m/s^2).
    pub gravity: f64,
    /// Number of fingers contributing friction.
    pub finger_count: u32,
    /// Per-finger gripping force (N).
    pub normal_force: f64,
    /// Internal pressure (Pa).
    pub pressure: f64,
}

impl GraspScenario {
    /// Scenario with standard gravity and the two-finger prototype layout.
    pub fn new(mass: f64, normal_force: f64, pressure: f64) -> Self {
        Self {
            mass,
            gravity: STANDARD_GRAVITY,
            finger_count: 2,
            normal_force,
            pressure,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass >= 0.0 && self.mass.is_finite()) {
            return Err(Error::Domain(format!(
                "mass {} kg must be nonnegative",
                self.mass
            )));
        }
        if !(self.gravity > 0.0 && self.gravity.is_finite()) {
            return Err(Error::Domain(format!(
                "gravity {} m/s^2 must be positive",
                self.gravity
            )));
        }
        if self.finger_count < 1 {
            return Err(Error::Domain("finger count must be at least 1".into()));
        }
        if !(self.normal_force >= 0.0 && self.normal_force.is_finite()) {
            return Err(Error::Domain(format!(
                "normal force {} N must be nonnegative",
                self.normal_force
            )));
        }
        if !(self.pressure >= 0.0 && self.pressure.is_finite()) {
            return Err(Error::Domain(format!(
                "pressure {} Pa must be nonnegative",
                self.pressure
            )));
        }
        Ok(())
    }
}

/// Outcome of one feasibility evaluation.
///
/// `feasible` holds exactly when `margin >= 0`, which for positive normal
/// force coincides with `mu_available >= mu_required`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraspOutcome {
    pub feasible: bool,
    /// `n * F_f(N, p) - m * g` (N).
    pub margin: f64,
    /// Effective friction coefficient delivered at `(N, p)`.
    pub mu_available: f64,
    /// `m * g / (n * N)`; infinite at zero force under a positive payload.
    pub mu_required: f64,
}

/// Trial-to-trial variability behind fractional success rates.
///
/// Each trial multiplies the interfacial shear strength and the payload mass
/// by independent truncated-Gaussian factors (mean 1, the given relative
/// sigma, clamped at +-3 sigma, floored at 0.01). Factors are a pure
/// function of `(seed, trial index)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseModel {
    pub tau_s_rel_sigma: f64,
    pub mass_rel_sigma: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_s_rel_sigma >= 0.0 && self.tau_s_rel_sigma.is_finite())
            || !(self.mass_rel_sigma >= 0.0 && self.mass_rel_sigma.is_finite())
        {
            return Err(Error::Domain("noise sigmas must be nonnegative".into()));
        }
        Ok(())
    }

    /// Same sigmas under a different root seed.
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// Friction coefficient the grasp demands: `m * g / (n * N)`.
pub fn required_friction(scenario: &GraspScenario) -> Result<f64> {
    scenario.validate()?;
    if scenario.normal_force <= 0.0 {
        return Err(Error::Domain(
            "required friction undefined at zero normal force".into(),
        ));
    }
    Ok(scenario.mass * scenario.gravity / (scenario.finger_count as f64 * scenario.normal_force))
}

/// Evaluates the static feasibility predicate at the scenario's `(N, p)`.
pub fn grasp_feasible(spec: &MembraneSpec, scenario: &GraspScenario) -> Result<GraspOutcome> {
    scenario.validate()?;
    let sol = contact_solve(spec, scenario.pressure, scenario.normal_force)?;
    let fingers = scenario.finger_count as f64;
    let weight = scenario.mass * scenario.gravity;
    let margin = fingers * sol.friction_force - weight;
    let mu_required = if scenario.normal_force > 0.0 {
        weight / (fingers * scenario.normal_force)
    } else if weight == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(GraspOutcome {
        feasible: margin >= 0.0,
        margin,
        mu_available: sol.mu_eff,
        mu_required,
    })
}

/// Smallest per-finger normal force in `(0, search_max]` that holds the
/// payload at the given pressure, to [`MIN_FORCE_TOL`] absolute.
///
/// With rim friction present the total friction force grows strictly with
/// the load, so the feasibility boundary is bisected directly. Without rim
/// friction the silicone term can saturate once the rim takes over the load;
/// the search then falls back to an exhaustive scan over
/// [`MIN_FORCE_SCAN_POINTS`] grid points, refined within the bracketing step.
/// Infeasibility anywhere in the range is reported along with the best
/// achievable margin.
pub fn min_normal_force(
    spec: &MembraneSpec,
    mass: f64,
    pressure: f64,
    finger_count: u32,
    search_max: f64,
) -> Result<f64> {
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::Domain(format!("mass {mass} kg must be positive")));
    }
    if !(search_max > 0.0 && search_max.is_finite()) {
        return Err(Error::Domain(format!(
            "search bound {search_max} N must be positive"
        )));
    }
    if finger_count < 1 {
        return Err(Error::Domain("finger count must be at least 1".into()));
    }
    let weight = mass * STANDARD_GRAVITY;
    let fingers = finger_count as f64;
    let margin = |n: f64| -> Result<f64> {
        Ok(fingers * contact_solve(spec, pressure, n)?.friction_force - weight)
    };

    let bisect = |mut lo: f64, mut hi: f64| -> Result<f64> {
        // hi is feasible, lo is not; the feasible set is upward-closed in N.
        while hi - lo > MIN_FORCE_TOL {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if margin(mid)? >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    };

    if spec.rim_friction_mu_rim > 0.0 {
        let top = margin(search_max)?;
        if top < 0.0 {
            return Err(Error::Infeasible { best_margin: top });
        }
        return bisect(0.0, search_max);
    }

    // mu_rim = 0: friction may flatten out; locate the first feasible grid
    // point, then refine inside that step.
    let mut best = f64::NEG_INFINITY;
    for i in 0..=MIN_FORCE_SCAN_POINTS {
        let n = search_max * i as f64 / MIN_FORCE_SCAN_POINTS as f64;
        let m = margin(n)?;
        if m > best {
            best = m;
        }
        if m >= 0.0 {
            if i == 0 {
                return Ok(0.0);
            }
            let prev = search_max * (i - 1) as f64 / MIN_FORCE_SCAN_POINTS as f64;
            return bisect(prev, n);
        }
    }
    Err(Error::Infeasible { best_margin: best })
}

/// Fraction of `trials` noisy feasibility evaluations that succeed.
///
/// Trial `i` perturbs the shear strength and the payload by the factors of
/// `(noise.seed, i)`, so the result is bit-reproducible for identical inputs
/// and independent of evaluation order.
pub fn success_rate(
    spec: &MembraneSpec,
    scenario: &GraspScenario,
    noise_model: &NoiseModel,
    trials: u32,
) -> Result<f64> {
    scenario.validate()?;
    noise_model.validate()?;
    if trials < 1 {
        return Err(Error::Domain("trial count must be at least 1".into()));
    }
    let mut successes = 0u32;
    for trial in 0..trials {
        let factors = noise::trial_factors(
            noise_model.seed,
            trial as u64,
            noise_model.tau_s_rel_sigma,
            noise_model.mass_rel_sigma,
        );
        let mut perturbed = *spec;
        perturbed.shear_strength_tau_s *= factors.tau_s;
        let mut trial_scenario = *scenario;
        trial_scenario.mass *= factors.mass;
        if grasp_feasible(&perturbed, &trial_scenario)?.feasible {
            successes += 1;
        }
    }
    Ok(successes as f64 / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec() -> MembraneSpec {
        MembraneSpec {
            width_w: 6e-3,
            length_l: 20e-3,
            thickness_t: 1e-3,
            rim_gap_g: 0.5e-3,
            residual_stress_sigma0: 1e5,
            youngs_modulus_e: 1e6,
            poisson_nu: 0.48,
            zero_pressure_modulus_e0: 0.5e6,
            stiffness_pressure_factor_eta: 2e-5,
            max_bulge_h_max: 3e-3,
            shear_strength_tau_s: 3e5,
            rim_friction_mu_rim: 0.2,
            contact_multiplier: 1,
        }
    }

    fn monotone_spec() -> MembraneSpec {
        MembraneSpec {
            width_w: 4e-3,
            length_l: 16e-3,
            thickness_t: 0.3e-3,
            rim_gap_g: 2e-3,
            residual_stress_sigma0: 2e4,
            youngs_modulus_e: 0.2e6,
            poisson_nu: 0.48,
            zero_pressure_modulus_e0: 1e6,
            stiffness_pressure_factor_eta: 0.0,
            max_bulge_h_max: 8e-3,
            shear_strength_tau_s: 2e5,
            rim_friction_mu_rim: 0.15,
            contact_multiplier: 1,
        }
    }

    #[test]
    fn required_friction_hand_arithmetic() {
        // The 200 g / 4 N setting of the lifting experiments.
        let mu = required_friction(&GraspScenario::new(0.2, 4.0, 0.0)).unwrap();
        assert_relative_eq!(mu, 0.24525, max_relative = 1e-12);
        assert_eq!(
            required_friction(&GraspScenario::new(0.0, 4.0, 0.0)).unwrap(),
            0.0
        );
        let half = required_friction(&GraspScenario::new(0.2, 8.0, 0.0)).unwrap();
        assert_relative_eq!(half, mu / 2.0, max_relative = 1e-15);
        assert!(required_friction(&GraspScenario::new(0.2, 0.0, 0.0)).is_err());
    }

    #[test]
    fn weightless_payload_always_feasible() {
        let spec = spec();
        let outcome = grasp_feasible(&spec, &GraspScenario::new(0.0, 4.0, 0.0)).unwrap();
        assert!(outcome.feasible);
        assert!(outcome.margin >= 0.0);
        assert_eq!(outcome.mu_required, 0.0);
    }

    #[test]
    fn no_grip_force_is_infeasible() {
        let spec = spec();
        let outcome = grasp_feasible(&spec, &GraspScenario::new(0.5, 0.0, 50e3)).unwrap();
        assert!(!outcome.feasible);
        assert_relative_eq!(
            outcome.margin,
            -0.5 * STANDARD_GRAVITY,
            max_relative = 1e-15
        );
        assert_eq!(outcome.mu_required, f64::INFINITY);
    }

    #[test]
    fn outcome_mu_comparison_matches_margin() {
        let spec = spec();
        for &(m, n, p) in &[
            (0.2, 4.0, 0.0),
            (0.2, 4.0, 50e3),
            (0.2, 4.0, 125e3),
            (0.5, 9.0, 75e3),
        ] {
            let o = grasp_feasible(&spec, &GraspScenario::new(m, n, p)).unwrap();
            if o.margin.abs() > 1e-12 * m * STANDARD_GRAVITY {
                assert_eq!(o.feasible, o.mu_available >= o.mu_required);
            }
        }
    }

    #[test]
    fn feasible_set_upward_closed_in_pressure() {
        let spec = monotone_spec();
        for &n in &[3.0, 6.0, 9.0] {
            let mut was_feasible = false;
            for i in 0..=100 {
                let p = 800e3 * i as f64 / 100.0;
                let ok = grasp_feasible(&spec, &GraspScenario::new(0.15, n, p))
                    .unwrap()
                    .feasible;
                assert!(!was_feasible || ok, "feasibility lost at p={p}, n={n}");
                was_feasible = ok;
            }
            assert!(was_feasible, "never feasible at n={n}");
        }
    }

    #[test]
    fn feasible_set_upward_closed_in_force() {
        let spec = spec();
        for &p in &[0.0, 50e3, 125e3] {
            let mut was_feasible = false;
            for i in 0..=100 {
                let n = 30.0 * i as f64 / 100.0;
                let ok = grasp_feasible(&spec, &GraspScenario::new(0.5, n, p))
                    .unwrap()
                    .feasible;
                assert!(!was_feasible || ok);
                was_feasible = ok;
            }
        }
    }

    #[test]
    fn min_force_pure_coulomb_closed_form() {
        // Rim-only regime at p = 0 reduces to N = m g / (n mu_rim).
        let mut spec = spec();
        spec.rim_friction_mu_rim = 0.5;
        let n = min_normal_force(&spec, 0.5, 0.0, 2, 100.0).unwrap();
        assert!((n - 4.905).abs() < 1e-6, "{n}");
    }

    #[test]
    fn min_force_matches_full_silicone_closed_form() {
        // No rim gap and a huge allowed bulge keep the contact fully
        // silicone down to tiny loads.
        let mut spec = spec();
        spec.rim_gap_g = 0.0;
        spec.max_bulge_h_max = 10e-3;
        let (mass, p, fingers) = (0.2, 50e3, 2u32);
        let h = crate::membrane::bulge_height_exact(&spec, p).unwrap();
        let r = crate::membrane::curvature_radius(&spec, h).unwrap();
        let e_star = crate::membrane::effective_modulus(&spec, p);
        let coeff = spec.shear_strength_tau_s
            * std::f64::consts::PI
            * (3.0 * r / (4.0 * e_star)).powf(2.0 / 3.0);
        let closed_form = (mass * STANDARD_GRAVITY / (fingers as f64 * coeff)).powf(1.5);
        let solved = min_normal_force(&spec, mass, p, fingers, 100.0).unwrap();
        assert!(
            (solved - closed_form).abs() < 1e-6,
            "solver {solved}, closed form {closed_form}"
        );
        // Confirm the regime assumption held at the solution.
        assert_eq!(
            crate::contact::classify_regime(&spec, p, solved).unwrap(),
            crate::contact::ContactRegime::FullSilicone
        );
    }

    #[test]
    fn min_force_matches_brute_force_scan() {
        let spec = spec();
        let (mass, p, fingers) = (0.4, 60e3, 2u32);
        let search_max = 40.0;
        let solved = min_normal_force(&spec, mass, p, fingers, search_max).unwrap();
        let weight = mass * STANDARD_GRAVITY;
        let points = 100_000;
        let scan = (0..=points)
            .map(|i| search_max * i as f64 / points as f64)
            .find(|&n| 2.0 * contact_solve(&spec, p, n).unwrap().friction_force >= weight)
            .expect("scan found no feasible force");
        assert!(
            (solved - scan).abs() <= search_max / points as f64,
            "solver {solved} vs scan {scan}"
        );
    }

    #[test]
    fn min_force_zero_rim_friction_fallback() {
        let mut spec = spec();
        spec.rim_friction_mu_rim = 0.0;
        // Feasible case: silicone alone can hold a light payload.
        let n = min_normal_force(&spec, 0.05, 100e3, 2, 20.0).unwrap();
        let outcome = grasp_feasible(&spec, &GraspScenario::new(0.05, n, 100e3)).unwrap();
        assert!(outcome.feasible);
        // Infeasible case: the silicone share saturates below the weight.
        let err = min_normal_force(&spec, 50.0, 100e3, 2, 20.0).unwrap_err();
        match err {
            Error::Infeasible { best_margin } => assert!(best_margin < 0.0),
            other => panic!("expected infeasibility, got {other}"),
        }
    }

    #[test]
    fn min_force_infeasible_reports_best_margin() {
        let spec = spec();
        let err = min_normal_force(&spec, 500.0, 50e3, 2, 10.0).unwrap_err();
        match err {
            Error::Infeasible { best_margin } => {
                let top = grasp_feasible(&spec, &GraspScenario::new(500.0, 10.0, 50e3))
                    .unwrap()
                    .margin;
                assert_relative_eq!(best_margin, top, max_relative = 1e-12);
            }
            other => panic!("expected infeasibility, got {other}"),
        }
    }

    #[test]
    fn min_force_nonincreasing_in_pressure() {
        let spec = monotone_spec();
        let mut last = f64::INFINITY;
        for i in 0..=19 {
            let p = 800e3 * i as f64 / 19.0;
            let n = min_normal_force(&spec, 0.15, p, 2, 50.0).unwrap();
            assert!(n <= last + 1e-7, "min force rose at p={p}");
            last = n;
        }
    }

    #[test]
    fn zero_noise_rate_matches_predicate() {
        let spec = spec();
        let noise = NoiseModel::default();
        for &(m, n, p) in &[(0.2, 4.0, 0.0), (0.2, 4.0, 75e3), (0.5, 9.0, 125e3)] {
            let scenario = GraspScenario::new(m, n, p);
            let rate = success_rate(&spec, &scenario, &noise, 25).unwrap();
            let expected = if grasp_feasible(&spec, &scenario).unwrap().feasible {
                1.0
            } else {
                0.0
            };
            assert_eq!(rate, expected);
        }
    }

    #[test]
    fn success_rate_replays_exactly() {
        let spec = spec();
        let noise = NoiseModel {
            tau_s_rel_sigma: 0.1,
            mass_rel_sigma: 0.1,
            seed: 12345,
        };
        let scenario = GraspScenario::new(0.2, 4.0, 25e3);
        let a = success_rate(&spec, &scenario, &noise, 500).unwrap();
        let b = success_rate(&spec, &scenario, &noise, 500).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn marginal_scenario_rate_is_fractional() {
        let spec = spec();
        // Pick the load so the zero-noise margin sits near zero, then add
        // noise: over 1000 trials some but not all must succeed.
        let pressure = 30e3;
        let n = min_normal_force(&spec, 0.2, pressure, 2, 50.0).unwrap();
        let scenario = GraspScenario::new(0.2, n * 1.0000001, pressure);
        let noise = NoiseModel {
            tau_s_rel_sigma: 0.1,
            mass_rel_sigma: 0.1,
            seed: 7,
        };
        let rate = success_rate(&spec, &scenario, &noise, 1000).unwrap();
        assert!(rate > 0.0 && rate < 1.0, "rate {rate}");
    }
}
