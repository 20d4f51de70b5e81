//! Can the gripper hold a payload, and how little force does it need?
//!
//! Evaluates the feasibility predicate n * F_f(N, p) >= m g for the two
//! steel-mass payloads of the lifting protocol, then solves for the minimum
//! per-finger normal force as pressure rises.
//!
//! Run with: cargo run --example grasp_feasibility

use pneugrip::config::load_membrane_spec;
use pneugrip::{grasp_feasible, min_normal_force, required_friction, units, GraspScenario};

fn main() -> pneugrip::Result<()> {
    let config = format!("{}/configs/finger.conf", env!("CARGO_MANIFEST_DIR"));
    let spec = load_membrane_spec(&config)?;

    // 200 g at 4 N per finger, pressure stepped up.
    let mass = 0.2;
    let force = 4.0;
    println!("payload {} g, per-finger force {force} N:", mass * 1e3);
    println!(
        "{:>8} {:>9} {:>12} {:>10} {:>10}",
        "p [kPa]", "feasible", "margin [N]", "mu_avail", "mu_req"
    );
    for step in 0..=5 {
        let p = units::from_kpa(step as f64 * 25.0);
        let scenario = GraspScenario::new(mass, force, p);
        let outcome = grasp_feasible(&spec, &scenario)?;
        println!(
            "{:8.0} {:>9} {:12.4} {:10.4} {:10.4}",
            units::to_kpa(p),
            outcome.feasible,
            outcome.margin,
            outcome.mu_available,
            outcome.mu_required,
        );
    }
    let req = required_friction(&GraspScenario::new(mass, force, 0.0))?;
    println!("(static requirement mu >= {req:.5} at this force)\n");

    // Minimum force vs pressure for both payloads.
    println!("minimum per-finger force to hold [N]:");
    println!("{:>8} {:>10} {:>10}", "p [kPa]", "200 g", "500 g");
    for step in 0..=5 {
        let p = units::from_kpa(step as f64 * 25.0);
        let mut row = format!("{:8.0}", units::to_kpa(p));
        for payload in [0.2, 0.5] {
            match min_normal_force(&spec, payload, p, 2, 100.0) {
                Ok(n) => row.push_str(&format!(" {n:10.3}")),
                Err(pneugrip::Error::Infeasible { .. }) => row.push_str(&format!(" {:>10}", "-")),
                Err(e) => return Err(e),
            }
        }
        println!("{row}");
    }
    println!("\nHigher pocket pressure buys the same hold at a fraction of the");
    println!("squeeze, which is what keeps fragile objects intact.");
    Ok(())
}
