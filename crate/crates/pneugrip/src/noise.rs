//! Counter-based deterministic noise.
//!
//! Every random factor is a pure function of `(seed, index)`, so trials can
//! be evaluated in any order, on any number of threads, and still reproduce
//! bit-identically. Not crypto; just stable and fast.

/// SplitMix64 finalizer.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a root seed and a stream index.
pub(crate) fn mix(seed: u64, index: u64) -> u64 {
    let mut state = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    splitmix64(&mut state)
}

/// Uniform in (0, 1] from 53 high bits; never 0 so `ln` stays finite.
fn unit_open(bits: u64) -> f64 {
    (((bits >> 11) + 1) as f64) * (1.0 / 9_007_199_254_740_992.0)
}

/// Uniform in [0, 1).
fn unit_half_open(bits: u64) -> f64 {
    ((bits >> 11) as f64) * (1.0 / 9_007_199_254_740_992.0)
}

/// A pair of independent standard normal deviates (Box-Muller).
fn standard_normal_pair(state: &mut u64) -> (f64, f64) {
    let u1 = unit_open(splitmix64(state));
    let u2 = unit_half_open(splitmix64(state));
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    (radius * angle.cos(), radius * angle.sin())
}

/// Multiplicative factor: mean 1, relative sigma, truncated at +-3 sigma by
/// clamping, floored at 0.01. Exactly 1 when sigma is 0.
fn factor(z: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return 1.0;
    }
    (1.0 + sigma * z)
        .clamp(1.0 - 3.0 * sigma, 1.0 + 3.0 * sigma)
        .max(0.01)
}

/// Per-trial multipliers for the interfacial shear strength and the payload.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TrialFactors {
    pub tau_s: f64,
    pub mass: f64,
}

/// Factors for trial `trial` under root seed `seed`.
pub(crate) fn trial_factors(
    seed: u64,
    trial: u64,
    tau_sigma: f64,
    mass_sigma: f64,
) -> TrialFactors {
    let mut state = mix(seed, trial);
    let (z_tau, z_mass) = standard_normal_pair(&mut state);
    TrialFactors {
        tau_s: factor(z_tau, tau_sigma),
        mass: factor(z_mass, mass_sigma),
    }
}
