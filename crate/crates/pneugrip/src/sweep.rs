//! Batch `(N, P)` grid sweeps and deformation metrics.
//!
//! A sweep evaluates every (normal force, pressure) pair of a grid: contact
//! regime, effective friction coefficient, contact area, deterministic
//! feasibility, and a Monte-Carlo success rate. Cell randomness derives from
//! `(root seed, cell index, trial index)`, so output is byte-identical
//! regardless of evaluation order or thread count. Per-cell model errors are
//! tagged into the cell rather than aborting the batch.

use std::path::Path;

use rayon::prelude::*;

use crate::contact::{contact_solve, ContactRegime};
use crate::error::{Error, Result};
use crate::grasp::{grasp_feasible, success_rate, GraspScenario, NoiseModel};
use crate::membrane::MembraneSpec;
use crate::noise;
use crate::units;

/// Grid definition for one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Normal-force values (N), strictly increasing.
    pub force_grid: Vec<f64>,
    /// Pressure values (Pa), strictly increasing.
    pub pressure_grid: Vec<f64>,
    /// Payload and finger layout; its `(normal_force, pressure)` fields are
    /// overwritten per cell.
    pub scenario_base: GraspScenario,
    pub noise: NoiseModel,
    /// Monte-Carlo trials per cell.
    pub trials: u32,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, grid) in [
            ("force", &self.force_grid),
            ("pressure", &self.pressure_grid),
        ] {
            if grid.is_empty() {
                return Err(Error::Domain(format!("{name} grid must not be empty")));
            }
            for (i, &v) in grid.iter().enumerate() {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(Error::Domain(format!(
                        "{name} grid value {v} must be nonnegative"
                    )));
                }
                if i > 0 && v <= grid[i - 1] {
                    return Err(Error::Domain(format!(
                        "{name} grid must be strictly increasing"
                    )));
                }
            }
        }
        if self.trials < 1 {
            return Err(Error::Domain("trial count must be at least 1".into()));
        }
        self.noise.validate()?;
        GraspScenario {
            normal_force: 0.0,
            pressure: 0.0,
            ..self.scenario_base
        }
        .validate()
    }
}

/// Result payload of one successfully evaluated cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellValues {
    pub regime: ContactRegime,
    pub mu_eff: f64,
    /// Contact area (m^2).
    pub contact_area: f64,
    /// Deterministic (zero-noise) feasibility.
    pub feasible: bool,
    /// Fraction of noisy trials that held the payload.
    pub success_rate: f64,
}

/// One cell of a sweep grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    /// Per-finger normal force (N).
    pub normal_force: f64,
    /// Internal pressure (Pa).
    pub pressure: f64,
    /// `Err` carries the model error message for an error-tagged cell.
    pub outcome: std::result::Result<CellValues, String>,
}

/// Root-seed derivation for a cell's noise stream.
pub fn cell_seed(root_seed: u64, cell_index: u64) -> u64 {
    noise::mix(root_seed, cell_index)
}

fn evaluate_cell(
    spec: &MembraneSpec,
    config: &SweepConfig,
    cell_index: u64,
    force: f64,
    pressure: f64,
) -> std::result::Result<CellValues, String> {
    let run = || -> Result<CellValues> {
        let scenario = GraspScenario {
            normal_force: force,
            pressure,
            ..config.scenario_base
        };
        let sol = contact_solve(spec, pressure, force)?;
        let outcome = grasp_feasible(spec, &scenario)?;
        let cell_noise = config
            .noise
            .with_seed(cell_seed(config.noise.seed, cell_index));
        let rate = success_rate(spec, &scenario, &cell_noise, config.trials)?;
        Ok(CellValues {
            regime: sol.regime,
            mu_eff: sol.mu_eff,
            contact_area: sol.contact_area,
            feasible: outcome.feasible,
            success_rate: rate,
        })
    };
    run().map_err(|e| e.to_string())
}

/// Evaluates the full grid, row-major by force then pressure.
///
/// Cells are independent and evaluated in parallel; the counter-based noise
/// keys make the result identical to a sequential run.
pub fn run_sweep(spec: &MembraneSpec, config: &SweepConfig) -> Result<Vec<SweepCell>> {
    spec.validate()?;
    config.validate()?;
    let n_pressures = config.pressure_grid.len();
    let total = config.force_grid.len() * n_pressures;
    Ok((0..total)
        .into_par_iter()
        .map(|idx| {
            let force = config.force_grid[idx / n_pressures];
            let pressure = config.pressure_grid[idx % n_pressures];
            SweepCell {
                normal_force: force,
                pressure,
                outcome: evaluate_cell(spec, config, idx as u64, force, pressure),
            }
        })
        .collect())
}

/// Minor and major post-grasp rim diameters of a deformable object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RimMeasurement {
    pub d_min: f64,
    pub d_max: f64,
}

impl RimMeasurement {
    pub fn new(d_min: f64, d_max: f64) -> Result<Self> {
        if !(d_min > 0.0 && d_min.is_finite()) || !(d_max > 0.0 && d_max.is_finite()) {
            return Err(Error::Domain("rim diameters must be positive".into()));
        }
        if d_min > d_max {
            return Err(Error::Domain(format!(
                "d_min {d_min} exceeds d_max {d_max}"
            )));
        }
        Ok(Self { d_min, d_max })
    }
}

/// Roundness ratio `d_min / d_max` in (0, 1]; 1 means no deformation.
pub fn roundness_ratio(rim: &RimMeasurement) -> f64 {
    rim.d_min / rim.d_max
}

/// Pinned sweep CSV header.
pub const SWEEP_CSV_HEADER: &str =
    "force_n,pressure_kpa,regime,mu_eff,contact_area_mm2,feasible,success_rate";

/// One sweep CSV row in the file's units (N, kPa, mm^2).
///
/// Keeping rows in file units makes parse-then-emit reproduce the input
/// bytes exactly; unit conversion happens only when building rows from
/// cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCsvRow {
    pub force_n: f64,
    pub pressure_kpa: f64,
    /// `None` encodes an error-tagged row (`regime=error`, empty numerics).
    pub values: Option<CsvRowValues>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRowValues {
    pub regime: ContactRegime,
    pub mu_eff: f64,
    pub contact_area_mm2: f64,
    pub feasible: bool,
    pub success_rate: f64,
}

impl SweepCsvRow {
    pub fn from_cell(cell: &SweepCell) -> Self {
        Self {
            force_n: cell.normal_force,
            pressure_kpa: units::to_kpa(cell.pressure),
            values: cell.outcome.as_ref().ok().map(|v| CsvRowValues {
                regime: v.regime,
                mu_eff: v.mu_eff,
                contact_area_mm2: units::to_mm2(v.contact_area),
                feasible: v.feasible,
                success_rate: v.success_rate,
            }),
        }
    }
}

/// Serializes rows with floats in shortest round-trip decimal form.
pub fn rows_to_csv(rows: &[SweepCsvRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        match &row.values {
            Some(v) => {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    row.force_n,
                    row.pressure_kpa,
                    v.regime,
                    v.mu_eff,
                    v.contact_area_mm2,
                    v.feasible,
                    v.success_rate
                ));
            }
            None => {
                out.push_str(&format!("{},{},error,,,,\n", row.force_n, row.pressure_kpa));
            }
        }
    }
    out
}

/// Serializes sweep cells to the pinned CSV schema.
pub fn sweep_to_csv(cells: &[SweepCell]) -> String {
    let rows: Vec<SweepCsvRow> = cells.iter().map(SweepCsvRow::from_cell).collect();
    rows_to_csv(&rows)
}

pub fn write_sweep_csv(path: impl AsRef<Path>, cells: &[SweepCell]) -> Result<()> {
    std::fs::write(path, sweep_to_csv(cells))?;
    Ok(())
}

/// Parses a sweep CSV back into rows (file units preserved).
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepCsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == SWEEP_CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected header '{SWEEP_CSV_HEADER}', got '{header}'"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty sweep file".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, raw) in lines {
        let line = i + 1;
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let num = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid {what} '{s}'"),
            })
        };
        let force_n = num(fields[0], "force")?;
        let pressure_kpa = num(fields[1], "pressure")?;
        let values = if fields[2] == "error" {
            if fields[3..].iter().any(|f| !f.is_empty()) {
                return Err(Error::Parse {
                    line,
                    msg: "error row must have empty numeric fields".into(),
                });
            }
            None
        } else {
            let regime: ContactRegime = fields[2]
                .parse()
                .map_err(|msg| Error::Parse { line, msg })?;
            let feasible = match fields[5] {
                "true" => true,
                "false" => false,
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("invalid feasible flag '{other}'"),
                    })
                }
            };
            Some(CsvRowValues {
                regime,
                mu_eff: num(fields[3], "mu_eff")?,
                contact_area_mm2: num(fields[4], "contact area")?,
                feasible,
                success_rate: num(fields[6], "success rate")?,
            })
        };
        rows.push(SweepCsvRow {
            force_n,
            pressure_kpa,
            values,
        });
    }
    Ok(rows)
}
