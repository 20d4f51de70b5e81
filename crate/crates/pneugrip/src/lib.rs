//! Computational model of a pressure-modulated friction gripper finger.
//!
//! A hybrid gripper finger pairs a rigid shell with a pressurized silicone
//! pocket. Inflating the pocket bulges the membrane past the shell rim,
//! grows the real contact area against the object, and thereby raises the
//! effective friction coefficient without raising the gripping force. This
//! crate models that chain end to end:
//!
//! - [`membrane`]: pressure-deflection law of the clamped membrane, cap
//!   curvature, rim protrusion, and pressure-stiffened contact modulus;
//! - [`contact`]: Hertz contact of the cap, the three contact regimes, the
//!   silicone/rim load split, and the resulting friction force;
//! - [`grasp`]: feasibility against payload weight, minimum gripping force,
//!   and Monte-Carlo success rates under parameter noise;
//! - [`calibration`]: friction extraction from force traces and
//!   least-squares calibration of the unmeasured membrane parameters;
//! - [`sweep`]: deterministic `(force, pressure)` grid sweeps with pinned
//!   CSV output, plus the roundness-ratio deformation metric;
//! - [`config`]: key-value configuration files for specs and sweeps;
//! - [`cli`]: the `pneugrip` binary's subcommands.
//!
//! Everything internal is SI; bench units (mm, kPa, N, kg) appear only at
//! the I/O boundary. All model evaluations are pure functions of their
//! inputs, and every random quantity is keyed by `(seed, counter)`, so
//! results replay bit-identically at any parallelism.
//!
//! The `examples/` directory holds one runnable walkthrough per capability;
//! start with `bulge_curve` and `friction_regimes`.

pub mod calibration;
pub mod cli;
pub mod config;
pub mod contact;
pub mod error;
pub mod grasp;
pub mod membrane;
mod noise;
pub mod sweep;
pub mod units;

pub use calibration::{
    extract_mu, fit_by_material, fit_parameters, predict_mu_curve, FitMask, FitOptions, FitResult,
    ForceTrace, FrictionSample, TraceSample,
};
pub use contact::{
    classify_regime, contact_solve, friction_coefficient, hertz_contact, ContactRegime,
    ContactSolution, HertzContact,
};
pub use error::{Error, Result};
pub use grasp::{
    grasp_feasible, min_normal_force, required_friction, success_rate, GraspOutcome, GraspScenario,
    NoiseModel, STANDARD_GRAVITY,
};
pub use membrane::{
    bulge_gain, bulge_height, bulge_height_exact, bulge_height_linear, bulge_pressure,
    curvature_radius, effective_modulus, protrusion, HeightModel, MembraneSpec,
};
pub use sweep::{
    parse_sweep_csv, roundness_ratio, run_sweep, sweep_to_csv, RimMeasurement, SweepCell,
    SweepConfig,
};
