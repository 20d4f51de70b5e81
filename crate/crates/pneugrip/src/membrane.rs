//! Pressurized-membrane kinematics.
//!
//! A rectangular opening of width `W` (short side) sealed by a silicone
//! membrane bulges into a spherical cap when pressurized. This module relates
//! pressure to apex height (forward and inverse), derives the cap's radius of
//! curvature and its protrusion past the rigid rim, and models the
//! pressure-stiffened effective contact modulus.
//!
//! All quantities are SI. The rectangular opening is reduced to an
//! axisymmetric problem through the half-span `a = W / 2`; the long side `L`
//! only participates in validation.

use crate::error::{Error, Result};

/// Geometry and material parameters of one finger's shell and silicone pocket.
///
/// Fields mirror the keys of the membrane configuration file. The half-span
/// `a = W / 2` is always derived via [`MembraneSpec::half_span`], never
/// stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneSpec {
    /// Short side of the rectangular opening (m).
    pub width_w: f64,
    /// Long side of the rectangular opening (m). Must exceed `width_w`.
    pub length_l: f64,
    /// Membrane thickness (m).
    pub thickness_t: f64,
    /// Recess of the membrane plane below the rim plane (m).
    pub rim_gap_g: f64,
    /// In-plane equibiaxial residual stress (Pa).
    pub residual_stress_sigma0: f64,
    /// Young's modulus of the membrane (Pa).
    pub youngs_modulus_e: f64,
    /// Poisson's ratio of the membrane.
    pub poisson_nu: f64,
    /// Effective contact modulus at zero pressure (Pa).
    pub zero_pressure_modulus_e0: f64,
    /// Proportionality factor of the pressure-stiffened modulus (1/Pa).
    pub stiffness_pressure_factor_eta: f64,
    /// Limiting bulge height of the membrane (m).
    pub max_bulge_h_max: f64,
    /// Interfacial shear stress of the silicone-object pair (Pa).
    pub shear_strength_tau_s: f64,
    /// Coulomb friction coefficient of the rigid rim against the object.
    pub rim_friction_mu_rim: f64,
    /// Number of parallel, identical contacts the pocket presents.
    ///
    /// The default of 1 treats the finger as a single effective contact.
    /// Values above 1 split the silicone-carried load equally over that many
    /// Hertz contacts.
    pub contact_multiplier: u32,
}

impl MembraneSpec {
    /// Effective half-span `a = W / 2` (m).
    pub fn half_span(&self) -> f64 {
        0.5 * self.width_w
    }

    /// Checks every field against its invariant.
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, msg: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidSpec(msg.to_string()))
            }
        }
        let finite = [
            self.width_w,
            self.length_l,
            self.thickness_t,
            self.rim_gap_g,
            self.residual_stress_sigma0,
            self.youngs_modulus_e,
            self.poisson_nu,
            self.zero_pressure_modulus_e0,
            self.stiffness_pressure_factor_eta,
            self.max_bulge_h_max,
            self.shear_strength_tau_s,
            self.rim_friction_mu_rim,
        ]
        .iter()
        .all(|v| v.is_finite());
        check(finite, "all fields must be finite")?;
        check(self.width_w > 0.0, "width_W must be positive")?;
        check(
            self.width_w < self.length_l,
            "width_W must be less than length_L",
        )?;
        check(self.thickness_t > 0.0, "thickness_t must be positive")?;
        check(self.rim_gap_g >= 0.0, "rim_gap_g must be nonnegative")?;
        check(
            self.residual_stress_sigma0 > 0.0,
            "residual_stress_sigma0 must be positive",
        )?;
        check(
            self.youngs_modulus_e > 0.0,
            "youngs_modulus_E must be positive",
        )?;
        check(
            (0.0..0.5).contains(&self.poisson_nu),
            "poisson_nu must lie in [0, 0.5)",
        )?;
        check(
            self.zero_pressure_modulus_e0 > 0.0,
            "zero_pressure_modulus_E0 must be positive",
        )?;
        check(
            self.stiffness_pressure_factor_eta >= 0.0,
            "stiffness_pressure_factor_eta must be nonnegative",
        )?;
        check(
            self.max_bulge_h_max > 0.0,
            "max_bulge_h_max must be positive",
        )?;
        check(
            self.shear_strength_tau_s > 0.0,
            "shear_strength_tau_s must be positive",
        )?;
        check(
            self.rim_friction_mu_rim >= 0.0,
            "rim_friction_mu_rim must be nonnegative",
        )?;
        check(
            self.contact_multiplier >= 1,
            "contact_multiplier must be at least 1",
        )?;
        Ok(())
    }
}

/// Which pressure-to-height relation downstream computations use.
///
/// `Exact` inverts the full bulge law numerically; `Linear` uses the
/// small-deflection proportionality clamped at the limiting height. The exact
/// inversion is the default everywhere a selector is not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeightModel {
    #[default]
    Exact,
    Linear,
}

/// Linear bulge compliance `k_h = a^2 / (2 sigma0 t)` (m/Pa).
pub fn bulge_gain(spec: &MembraneSpec) -> f64 {
    let a = spec.half_span();
    a * a / (2.0 * spec.residual_stress_sigma0 * spec.thickness_t)
}

/// Bulge-law polynomial without range checks. Strictly increasing in `h`.
fn pressure_of_height(spec: &MembraneSpec, h: f64) -> f64 {
    let a = spec.half_span();
    let a2 = a * a;
    let linear = 2.0 * spec.residual_stress_sigma0 * spec.thickness_t / a2;
    let cubic = (4.0 / 3.0) * spec.youngs_modulus_e * spec.thickness_t
        / ((1.0 - spec.poisson_nu * spec.poisson_nu) * a2 * a2);
    linear * h + cubic * h * h * h
}

/// Pressure required to hold apex height `h` (Pa).
///
/// `h` must lie in `[0, h_max]`; the law combines a residual-stress term
/// linear in `h` with a bending term cubic in `h`, so it is strictly
/// increasing and vanishes at `h = 0`.
pub fn bulge_pressure(spec: &MembraneSpec, h: f64) -> Result<f64> {
    if !(0.0..=spec.max_bulge_h_max).contains(&h) {
        return Err(Error::Domain(format!(
            "bulge height {h} m outside [0, {}] m",
            spec.max_bulge_h_max
        )));
    }
    Ok(pressure_of_height(spec, h))
}

/// Relative pressure-residual tolerance of the exact height inversion.
pub const HEIGHT_SOLVE_TOL: f64 = 1e-10;
/// Iteration cap of the exact height inversion.
pub const HEIGHT_SOLVE_MAX_ITER: usize = 200;

/// Apex height at pressure `p`, by inverting the bulge law (m).
///
/// Returns the unique root of the bulge law, clamped to `h_max`. The root is
/// bracketed on `[0, h_max]` and bisected until the relative pressure
/// residual drops below [`HEIGHT_SOLVE_TOL`]; failure to converge within
/// [`HEIGHT_SOLVE_MAX_ITER`] iterations is reported, never silently returned.
pub fn bulge_height_exact(spec: &MembraneSpec, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 0.0 {
        return Err(Error::Domain(format!(
            "pressure {p} Pa must be nonnegative"
        )));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let h_max = spec.max_bulge_h_max;
    if p >= pressure_of_height(spec, h_max) {
        return Ok(h_max);
    }
    let scale = p.max(1.0);
    let (mut lo, mut hi) = (0.0_f64, h_max);
    for _ in 0..HEIGHT_SOLVE_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let pm = pressure_of_height(spec, mid);
        if ((pm - p) / scale).abs() <= HEIGHT_SOLVE_TOL {
            return Ok(mid);
        }
        if pm < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Solver(format!(
        "bulge height inversion did not reach {HEIGHT_SOLVE_TOL:e} relative residual \
         in {HEIGHT_SOLVE_MAX_ITER} iterations at p = {p} Pa"
    )))
}

/// Apex height at pressure `p` under the small-deflection law (m).
///
/// Returns `min(k_h p, h_max)`. Agrees with the exact inversion to first
/// order for small heights and always bounds it from above.
pub fn bulge_height_linear(spec: &MembraneSpec, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 0.0 {
        return Err(Error::Domain(format!(
            "pressure {p} Pa must be nonnegative"
        )));
    }
    Ok((bulge_gain(spec) * p).min(spec.max_bulge_h_max))
}

/// Apex height at pressure `p` under the selected height model (m).
pub fn bulge_height(spec: &MembraneSpec, model: HeightModel, p: f64) -> Result<f64> {
    match model {
        HeightModel::Exact => bulge_height_exact(spec, p),
        HeightModel::Linear => bulge_height_linear(spec, p),
    }
}

/// Radius of curvature of the spherical cap at apex height `h` (m).
///
/// `R = (a^2 + h^2) / (2h)`, minimized at `h = a` where the cap is a
/// hemisphere of radius `a`. A flat membrane (`h = 0`) has no finite cap
/// radius; callers must route that case to the rim-only regime.
pub fn curvature_radius(spec: &MembraneSpec, h: f64) -> Result<f64> {
    if h <= 0.0 {
        return Err(Error::Domain(format!(
            "curvature radius undefined for bulge height {h} m"
        )));
    }
    let a = spec.half_span();
    Ok((a * a + h * h) / (2.0 * h))
}

/// Height by which the cap extends past the rim plane (m).
///
/// `h - g` when the apex clears the rim gap, else 0; total on `h >= 0` so
/// downstream regime logic never faults.
pub fn protrusion(spec: &MembraneSpec, h: f64) -> f64 {
    (h - spec.rim_gap_g).max(0.0)
}

/// Pressure-stiffened effective contact modulus `E*(p) = E0 (1 + eta p)` (Pa).
pub fn effective_modulus(spec: &MembraneSpec, p: f64) -> f64 {
    debug_assert!(p >= 0.0);
    spec.zero_pressure_modulus_e0 * (1.0 + spec.stiffness_pressure_factor_eta * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Spec with the round numbers used across the per-operation examples.
    fn example_spec() -> MembraneSpec {
        MembraneSpec {
            width_w: 0.02,
            length_l: 0.05,
            thickness_t: 0.5e-3,
            rim_gap_g: 0.5e-3,
            residual_stress_sigma0: 1e5,
            youngs_modulus_e: 1e6,
            poisson_nu: 0.48,
            zero_pressure_modulus_e0: 0.5e6,
            stiffness_pressure_factor_eta: 1e-5,
            max_bulge_h_max: 3e-3,
            shear_strength_tau_s: 3e5,
            rim_friction_mu_rim: 0.2,
            contact_multiplier: 1,
        }
    }

    #[test]
    fn spec_validates() {
        example_spec().validate().unwrap();
        let mut bad = example_spec();
        bad.width_w = bad.length_l;
        assert!(bad.validate().is_err());
        bad = example_spec();
        bad.poisson_nu = 0.5;
        assert!(bad.validate().is_err());
        bad = example_spec();
        bad.contact_multiplier = 0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bulge_gain_matches_hand_arithmetic() {
        // a = 10 mm, sigma0 = 0.1 MPa, t = 0.5 mm -> 1e-6 m/Pa.
        let spec = example_spec();
        assert_relative_eq!(bulge_gain(&spec), 1e-6, max_relative = 1e-14);
    }

    #[test]
    fn bulge_gain_halves_when_stress_doubles() {
        let spec = example_spec();
        let mut stiff = spec;
        stiff.residual_stress_sigma0 *= 2.0;
        assert_relative_eq!(
            bulge_gain(&stiff),
            bulge_gain(&spec) / 2.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn bulge_gain_vanishes_with_span() {
        let mut spec = example_spec();
        spec.width_w = 1e-9;
        assert!(bulge_gain(&spec) < 1e-12);
    }

    #[test]
    fn bulge_pressure_examples() {
        let spec = example_spec();
        assert_eq!(bulge_pressure(&spec, 0.0).unwrap(), 0.0);
        // Independent high-precision evaluation of the bulge law at h = 2 mm:
        // 2000 Pa linear term + 693.000693... Pa cubic term.
        let p = bulge_pressure(&spec, 2e-3).unwrap();
        assert_relative_eq!(p, 2693.000693000693, max_relative = 1e-12);
        assert!(bulge_pressure(&spec, -1e-6).is_err());
        assert!(bulge_pressure(&spec, spec.max_bulge_h_max * 1.01).is_err());
    }

    #[test]
    fn bulge_pressure_strictly_increasing() {
        let spec = example_spec();
        let mut last = -1.0;
        for i in 0..=100 {
            let h = spec.max_bulge_h_max * i as f64 / 100.0;
            let p = bulge_pressure(&spec, h).unwrap();
            assert!(p > last, "p({h}) = {p} not above {last}");
            last = p;
        }
    }

    #[test]
    fn height_inversion_round_trip() {
        let spec = example_spec();
        assert_eq!(bulge_height_exact(&spec, 0.0).unwrap(), 0.0);
        for i in 1..=100 {
            let h = spec.max_bulge_h_max * i as f64 / 100.0;
            let p = bulge_pressure(&spec, h).unwrap();
            let back = bulge_height_exact(&spec, p).unwrap();
            assert_relative_eq!(back, h, max_relative = 1e-9);
        }
    }

    #[test]
    fn height_inversion_clamps() {
        let spec = example_spec();
        let p_cap = bulge_pressure(&spec, spec.max_bulge_h_max).unwrap();
        assert_eq!(
            bulge_height_exact(&spec, 2.0 * p_cap).unwrap(),
            spec.max_bulge_h_max
        );
    }

    #[test]
    fn linear_height_examples() {
        let spec = example_spec();
        assert_eq!(bulge_height_linear(&spec, 0.0).unwrap(), 0.0);
        // k_h = 1e-6 m/Pa, h_max = 3 mm, p = 50 kPa -> clamp at 3 mm.
        assert_eq!(bulge_height_linear(&spec, 50e3).unwrap(), 3e-3);
    }

    #[test]
    fn linear_bounds_exact_from_above() {
        let spec = example_spec();
        for i in 0..=60 {
            let p = 40e3 * i as f64 / 60.0;
            let lin = bulge_height_linear(&spec, p).unwrap();
            let exact = bulge_height_exact(&spec, p).unwrap();
            assert!(
                lin >= exact * (1.0 - 1e-12),
                "p={p}: lin={lin} < exact={exact}"
            );
            assert!(exact <= spec.max_bulge_h_max);
        }
    }

    #[test]
    fn linear_matches_exact_at_small_pressure() {
        // Pressures stay high enough that the model difference dominates the
        // inversion's own residual tolerance.
        let spec = example_spec();
        let mut last_ratio = f64::INFINITY;
        for &p in &[1000.0, 100.0, 10.0] {
            let lin = bulge_height_linear(&spec, p).unwrap();
            let exact = bulge_height_exact(&spec, p).unwrap();
            let ratio = (lin - exact).abs() / exact;
            assert!(ratio < last_ratio);
            last_ratio = ratio;
        }
        assert!(last_ratio < 1e-5);
    }

    #[test]
    fn curvature_radius_examples() {
        let spec = example_spec();
        // Hemisphere: h = a = 10 mm -> R = 10 mm.
        assert_relative_eq!(
            curvature_radius(&spec, 0.01).unwrap(),
            0.01,
            max_relative = 1e-15
        );
        // h = 1 mm -> R = 50.5 mm.
        assert_relative_eq!(
            curvature_radius(&spec, 1e-3).unwrap(),
            0.0505,
            max_relative = 1e-14
        );
        assert!(curvature_radius(&spec, 0.0).is_err());
        // R grows without bound as h -> 0+.
        assert!(curvature_radius(&spec, 1e-12).unwrap() > 1e7);
    }

    #[test]
    fn curvature_radius_at_least_half_span() {
        let spec = example_spec();
        let a = spec.half_span();
        for i in 1..=100 {
            let h = spec.max_bulge_h_max * i as f64 / 100.0;
            assert!(curvature_radius(&spec, h).unwrap() >= a * (1.0 - 1e-15));
        }
    }

    #[test]
    fn protrusion_clamps_below_gap() {
        let spec = example_spec();
        let g = spec.rim_gap_g;
        assert_eq!(protrusion(&spec, g), 0.0);
        assert_relative_eq!(protrusion(&spec, g + 1e-3), 1e-3, max_relative = 1e-12);
        assert_eq!(protrusion(&spec, 0.5 * g), 0.0);
        assert_eq!(protrusion(&spec, 0.0), 0.0);
    }

    #[test]
    fn protrusion_nondecreasing() {
        let spec = example_spec();
        let mut last = 0.0;
        for i in 0..=100 {
            let h = 2.0 * spec.rim_gap_g * i as f64 / 100.0;
            let s = protrusion(&spec, h);
            assert!(s >= last);
            last = s;
        }
    }

    #[test]
    fn effective_modulus_examples() {
        let spec = example_spec();
        assert_eq!(effective_modulus(&spec, 0.0), spec.zero_pressure_modulus_e0);
        // E0 = 0.5 MPa, eta = 1e-5 /Pa, p = 100 kPa -> 1.0 MPa.
        assert_relative_eq!(effective_modulus(&spec, 100e3), 1.0e6, max_relative = 1e-14);
        let mut rigid = spec;
        rigid.stiffness_pressure_factor_eta = 0.0;
        for &p in &[0.0, 1e3, 1e5, 1e7] {
            assert_eq!(effective_modulus(&rigid, p), rigid.zero_pressure_modulus_e0);
        }
    }

    #[test]
    fn effective_modulus_affine_in_pressure() {
        let spec = example_spec();
        let e0 = effective_modulus(&spec, 0.0);
        let slope = (effective_modulus(&spec, 1e5) - e0) / 1e5;
        for &p in &[2.5e4, 7.7e4, 3.1e5] {
            assert_relative_eq!(
                effective_modulus(&spec, p),
                e0 + slope * p,
                max_relative = 1e-12
            );
        }
    }
}
