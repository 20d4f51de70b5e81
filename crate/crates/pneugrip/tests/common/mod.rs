//! Shared fixtures for the integration suites.
//
// Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use pneugrip::MembraneSpec;

/// Synthetic finger whose three regimes all appear between 0 and 200 kPa at
/// loads of a few newtons. Matches `configs/finger.conf`.
pub fn synthetic_spec() -> MembraneSpec {
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

/// Rim gap equal to the half-span and no pressure stiffening: past the rim
/// the cap radius grows with height, so the effective friction coefficient
/// is nondecreasing in pressure through all three regimes.
pub fn monotone_spec() -> MembraneSpec {
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

/// Path of a bundled configuration file.
pub fn config_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}
