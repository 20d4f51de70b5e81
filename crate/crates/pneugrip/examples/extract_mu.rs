//! Pull a friction coefficient out of a raw force trace.
//!
//! Synthesizes the kind of record a 6-axis sensor produces while the finger
//! slides upward: a loaded stretch where |F_z| carries the grip force, then
//! a release tail where readings are noise. The coefficient is the maximum
//! |F_y| / |F_z| over samples above the contact threshold.
//!
//! Run with: cargo run --example extract_mu

use pneugrip::calibration::{extract_mu, ForceTrace, TraceSample, DEFAULT_CONTACT_THRESHOLD};

fn main() -> pneugrip::Result<()> {
    let mut samples = Vec::new();
    // Sliding phase: normal force held near 4 N, tangential force building
    // to its static peak and easing off as sliding settles.
    for i in 0..200 {
        let t = i as f64 * 0.005;
        let fz = 4.0 + 0.08 * (t * 40.0).sin();
        let peak = 1.9 * (1.0 - (-(t * 6.0)).exp());
        let settle = 1.0 - 0.12 * (t - 0.5).max(0.0);
        samples.push(TraceSample {
            time: t,
            fy: -peak * settle,
            fz,
        });
    }
    // Release tail: contact lost, sensor noise only.
    for i in 200..260 {
        let t = i as f64 * 0.005;
        samples.push(TraceSample {
            time: t,
            fy: 0.002,
            fz: 0.01,
        });
    }
    let trace = ForceTrace::new(samples)?;

    let mu = extract_mu(&trace, DEFAULT_CONTACT_THRESHOLD)?;
    println!("samples: {}", trace.samples().len());
    println!("contact threshold: {DEFAULT_CONTACT_THRESHOLD} N");
    println!("extracted mu = {mu:.4}");

    // The tail's 0.2 ratio never competes: it sits below the threshold.
    let tail_ratio: f64 = 0.002 / 0.01;
    println!("(release-tail ratio {tail_ratio} was ignored as non-contact)");
    Ok(())
}
