//! Command-line front end.
//!
//! One thin binary wraps the library: `mu`, `bulge`, `grasp`, `sweep`,
//! `calibrate`, and `extract-mu` subcommands. Arguments use bench units
//! (kPa, N, kg, mm); all diagnostics go to stderr, all data to stdout or the
//! requested output file. Exit codes: 0 success, 1 domain or model error,
//! 2 usage or parse error.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};

use crate::calibration::{
    extract_mu, fit_by_material, read_friction_samples, write_fit_report, FitMask, FitOptions,
    ForceTrace, DEFAULT_CONTACT_THRESHOLD,
};
use crate::config::{load_membrane_spec, load_sweep_config};
use crate::contact::contact_solve;
use crate::error::{Error, Result};
use crate::grasp::{grasp_feasible, min_normal_force, GraspScenario};
use crate::membrane::{bulge_height, curvature_radius, effective_modulus, protrusion, HeightModel};
use crate::sweep::{run_sweep, write_sweep_csv};
use crate::units;

#[derive(Parser)]
#[command(
    name = "pneugrip",
    version,
    about = "Pressure-modulated friction gripper model",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Friction coefficient, regime, and contact area at one (p, N) point.
    Mu {
        /// Membrane configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Internal pressure (kPa).
        #[arg(long)]
        pressure_kpa: f64,
        /// Normal load (N).
        #[arg(long)]
        force_n: f64,
    },
    /// Membrane state (height, curvature, protrusion, modulus) at a pressure.
    #[command(group(ArgGroup::new("model").args(["exact", "linear"])))]
    Bulge {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        pressure_kpa: f64,
        /// Invert the full bulge law (default).
        #[arg(long)]
        exact: bool,
        /// Use the clamped small-deflection law instead.
        #[arg(long)]
        linear: bool,
    },
    /// Grasp feasibility at a force, or the minimum force that holds.
    #[command(group(ArgGroup::new("mode").required(true).args(["force_n", "min_force"])))]
    Grasp {
        #[arg(long)]
        config: PathBuf,
        /// Payload mass (kg).
        #[arg(long)]
        mass_kg: f64,
        #[arg(long)]
        pressure_kpa: f64,
        /// Per-finger normal force (N) to test.
        #[arg(long)]
        force_n: Option<f64>,
        /// Solve for the smallest feasible force instead.
        #[arg(long)]
        min_force: bool,
        /// Upper bound of the minimum-force search (N).
        #[arg(long, default_value_t = 100.0)]
        search_max_n: f64,
        /// Number of fingers contributing friction.
        #[arg(long, default_value_t = 2)]
        fingers: u32,
    },
    /// Evaluate an (N, P) grid and write the sweep CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Sweep definition file.
        #[arg(long)]
        sweep: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Override the root seed of the sweep file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fit membrane parameters to measured friction samples.
    Calibrate {
        #[arg(long)]
        config: PathBuf,
        /// Friction-sample CSV (material,pressure_kpa,normal_force_n,mu).
        #[arg(long)]
        data: PathBuf,
        /// Output report path.
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated parameters to fit.
        #[arg(long, default_value = "sigma0,eta,tau_s,mu_rim")]
        fit: FitMask,
    },
    /// Extract a friction coefficient from a force-trace CSV.
    ExtractMu {
        /// Trace CSV (time_s,fy_n,fz_n).
        #[arg(long)]
        trace: PathBuf,
        /// Contact threshold on |F_z| (N).
        #[arg(long, default_value_t = DEFAULT_CONTACT_THRESHOLD)]
        threshold_n: f64,
    },
}

/// Runs the CLI against the given arguments and streams; returns the exit
/// code. The binary wraps this with the process streams so tests can drive
/// the full surface in-process.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Mu {
            config,
            pressure_kpa,
            force_n,
        } => {
            let spec = load_membrane_spec(&config)?;
            let sol = contact_solve(&spec, units::from_kpa(pressure_kpa), force_n)?;
            writeln!(out, "regime = {}", sol.regime)?;
            writeln!(out, "mu_eff = {}", sol.mu_eff)?;
            writeln!(
                out,
                "contact_area_mm2 = {}",
                units::to_mm2(sol.contact_area)
            )?;
        }
        Command::Bulge {
            config,
            pressure_kpa,
            exact: _,
            linear,
        } => {
            let spec = load_membrane_spec(&config)?;
            let model = if linear {
                HeightModel::Linear
            } else {
                HeightModel::Exact
            };
            let p = units::from_kpa(pressure_kpa);
            let h = bulge_height(&spec, model, p)?;
            let radius = if h > 0.0 {
                curvature_radius(&spec, h)?
            } else {
                f64::INFINITY
            };
            writeln!(out, "h_mm = {}", units::to_mm(h))?;
            writeln!(out, "r_mm = {}", units::to_mm(radius))?;
            writeln!(out, "s_mm = {}", units::to_mm(protrusion(&spec, h)))?;
            writeln!(
                out,
                "e_star_mpa = {}",
                units::to_mpa(effective_modulus(&spec, p))
            )?;
        }
        Command::Grasp {
            config,
            mass_kg,
            pressure_kpa,
            force_n,
            min_force,
            search_max_n,
            fingers,
        } => {
            let spec = load_membrane_spec(&config)?;
            let pressure = units::from_kpa(pressure_kpa);
            if min_force {
                let n = min_normal_force(&spec, mass_kg, pressure, fingers, search_max_n)?;
                writeln!(out, "min_force_n = {n}")?;
            } else {
                let scenario = GraspScenario {
                    mass: mass_kg,
                    normal_force: force_n.expect("clap group guarantees --force-n"),
                    pressure,
                    finger_count: fingers,
                    ..GraspScenario::new(0.0, 0.0, 0.0)
                };
                let outcome = grasp_feasible(&spec, &scenario)?;
                writeln!(out, "feasible = {}", outcome.feasible)?;
                writeln!(out, "margin_n = {}", outcome.margin)?;
                writeln!(out, "mu_available = {}", outcome.mu_available)?;
                writeln!(out, "mu_required = {}", outcome.mu_required)?;
            }
        }
        Command::Sweep {
            config,
            sweep,
            out: out_path,
            seed,
        } => {
            let spec = load_membrane_spec(&config)?;
            let mut sweep_config = load_sweep_config(&sweep)?;
            if let Some(seed) = seed {
                sweep_config.noise.seed = seed;
            }
            let cells = run_sweep(&spec, &sweep_config)?;
            write_sweep_csv(&out_path, &cells)?;
        }
        Command::Calibrate {
            config,
            data,
            out: out_path,
            fit,
        } => {
            let spec = load_membrane_spec(&config)?;
            let samples = read_friction_samples(&data)?;
            let results = fit_by_material(&spec, &samples, fit, &FitOptions::default())?;
            write_fit_report(&out_path, &results)?;
        }
        Command::ExtractMu { trace, threshold_n } => {
            let trace = ForceTrace::from_csv_path(&trace)?;
            writeln!(out, "mu = {}", extract_mu(&trace, threshold_n)?)?;
        }
    }
    Ok(())
}
