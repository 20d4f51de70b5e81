//! Run the full (force, pressure) grid of the lifting protocol.
//!
//! Every cell gets a contact solution, a deterministic feasibility verdict,
//! and a Monte-Carlo success rate under 10% parameter noise. The grid is
//! written to sweep.csv in the pinned schema; rerunning with the same seed
//! reproduces the file byte for byte.
//!
//! Run with: cargo run --example pressure_sweep

use pneugrip::config::{load_membrane_spec, load_sweep_config};
use pneugrip::sweep::write_sweep_csv;
use pneugrip::{run_sweep, units};

fn main() -> pneugrip::Result<()> {
    let base = env!("CARGO_MANIFEST_DIR");
    let spec = load_membrane_spec(format!("{base}/configs/finger.conf"))?;
    let mut config = load_sweep_config(format!("{base}/configs/sweep.conf"))?;
    config.trials = 1000;

    let cells = run_sweep(&spec, &config)?;

    println!(
        "success rate, {} g payload, {} trials/cell, seed {}:\n",
        config.scenario_base.mass * 1e3,
        config.trials,
        config.noise.seed
    );
    print!("{:>7}", "N \\ p");
    for &p in &config.pressure_grid {
        print!(" {:>6.0}", units::to_kpa(p));
    }
    println!("  [kPa]");
    for (row, &force) in config.force_grid.iter().enumerate() {
        print!("{force:>6}N");
        for col in 0..config.pressure_grid.len() {
            let cell = &cells[row * config.pressure_grid.len() + col];
            match &cell.outcome {
                Ok(values) => print!(" {:>6.2}", values.success_rate),
                Err(_) => print!(" {:>6}", "err"),
            }
        }
        println!();
    }

    let out = "sweep.csv";
    write_sweep_csv(out, &cells)?;
    println!("\nwrote {} cells to {out}", cells.len());
    println!("rerun with the same seed and the file stays byte-identical.");
    Ok(())
}
