//! Inflate the membrane over a pressure ramp and print its state.
//!
//! Shows the pressure-deflection law both ways: the exact inversion of the
//! full bulge law and the clamped small-deflection approximation, alongside
//! the cap curvature radius, the protrusion past the rim, and the
//! pressure-stiffened contact modulus.
//!
//! Run with: cargo run --example bulge_curve

use pneugrip::config::load_membrane_spec;
use pneugrip::membrane::HeightModel;
use pneugrip::{bulge_gain, bulge_height, curvature_radius, effective_modulus, protrusion, units};

fn main() -> pneugrip::Result<()> {
    let config = format!("{}/configs/finger.conf", env!("CARGO_MANIFEST_DIR"));
    let spec = load_membrane_spec(&config)?;

    println!(
        "membrane: W = {} mm, a = {} mm, rim gap g = {} mm",
        units::to_mm(spec.width_w),
        units::to_mm(spec.half_span()),
        units::to_mm(spec.rim_gap_g)
    );
    println!("linear bulge gain k_h = {:.3e} m/Pa\n", bulge_gain(&spec));

    println!(
        "{:>8} {:>10} {:>10} {:>9} {:>9} {:>11}",
        "p [kPa]", "h_ex [mm]", "h_lin [mm]", "R [mm]", "s [mm]", "E* [MPa]"
    );
    for step in 0..=12 {
        let p = units::from_kpa(step as f64 * 25.0);
        let h_exact = bulge_height(&spec, HeightModel::Exact, p)?;
        let h_linear = bulge_height(&spec, HeightModel::Linear, p)?;
        let radius = if h_exact > 0.0 {
            format!("{:9.3}", units::to_mm(curvature_radius(&spec, h_exact)?))
        } else {
            format!("{:>9}", "-")
        };
        println!(
            "{:8.0} {:10.4} {:10.4} {} {:9.4} {:11.3}",
            units::to_kpa(p),
            units::to_mm(h_exact),
            units::to_mm(h_linear),
            radius,
            units::to_mm(protrusion(&spec, h_exact)),
            units::to_mpa(effective_modulus(&spec, p)),
        );
    }

    println!("\nThe cubic stiffening term separates the two height models well");
    println!(
        "before the clamp at h_max = {} mm engages.",
        units::to_mm(spec.max_bulge_h_max)
    );
    Ok(())
}
