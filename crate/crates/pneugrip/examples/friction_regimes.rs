//! Sweep pressure at fixed loads and watch the contact regime change.
//!
//! At low pressure only the rigid rim touches the object (constant Coulomb
//! friction). Past the rim-gap crossing the cap shares load with the rim,
//! and with enough pressure it carries everything, where friction follows
//! the shear-strength area model with its mu ~ N^(-1/3) load dependence.
//!
//! Run with: cargo run --example friction_regimes

use pneugrip::config::load_membrane_spec;
use pneugrip::{contact_solve, units};

fn main() -> pneugrip::Result<()> {
    let config = format!("{}/configs/finger.conf", env!("CARGO_MANIFEST_DIR"));
    let spec = load_membrane_spec(&config)?;
    let loads = [3.0, 4.0, 9.0];

    for &load in &loads {
        println!("normal load {load} N:");
        println!(
            "{:>8} {:>9} {:>8} {:>10} {:>8} {:>8}",
            "p [kPa]", "regime", "mu_eff", "A [mm^2]", "N_s [N]", "N_r [N]"
        );
        let mut last_regime = None;
        for step in 0..=8 {
            let p = units::from_kpa(step as f64 * 25.0);
            let sol = contact_solve(&spec, p, load)?;
            let marker = if last_regime.is_some() && last_regime != Some(sol.regime) {
                " <- transition"
            } else {
                ""
            };
            last_regime = Some(sol.regime);
            println!(
                "{:8.0} {:>9} {:8.4} {:10.3} {:8.3} {:8.3}{marker}",
                units::to_kpa(p),
                sol.regime.to_string(),
                sol.mu_eff,
                units::to_mm2(sol.contact_area),
                sol.silicone_load,
                sol.rim_load,
            );
        }
        println!();
    }

    println!("Raising pressure moves load from the rim onto the silicone cap,");
    println!("which multiplies the usable friction without any extra grip force.");
    Ok(())
}
