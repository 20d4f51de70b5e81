//! Key-value configuration files.
//!
//! Both the membrane spec and the sweep definition load from plain
//! `key = value` text. `#` starts a comment, blank lines are skipped, keys
//! must be unique, and unknown keys are a hard parse error. Scalar values
//! accept an optional unit suffix (`mm`, `kPa`, `MPa`) that is converted to
//! SI at parse time.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grasp::{GraspScenario, NoiseModel, STANDARD_GRAVITY};
use crate::membrane::MembraneSpec;
use crate::sweep::SweepConfig;

struct KvEntry {
    line: usize,
    key: String,
    value: String,
}

fn parse_kv(text: &str) -> Result<Vec<KvEntry>> {
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                line,
                msg: format!("expected 'key = value', got '{content}'"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "empty key or value".into(),
            });
        }
        if !seen.insert(key.clone()) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate key '{key}'"),
            });
        }
        entries.push(KvEntry { line, key, value });
    }
    Ok(entries)
}

/// Parses `<number> [mm|kPa|MPa]` into an SI value.
fn parse_quantity(entry: &KvEntry) -> Result<f64> {
    let mut tokens = entry.value.split_whitespace();
    let number = tokens.next().unwrap_or("");
    let value: f64 = number.parse().map_err(|_| Error::Parse {
        line: entry.line,
        msg: format!("invalid number '{number}' for key '{}'", entry.key),
    })?;
    let scale = match tokens.next() {
        None => 1.0,
        Some("mm") => 1e-3,
        Some("kPa") => 1e3,
        Some("MPa") => 1e6,
        Some(unit) => {
            return Err(Error::Parse {
                line: entry.line,
                msg: format!("unknown unit '{unit}' (expected mm, kPa, or MPa)"),
            })
        }
    };
    if tokens.next().is_some() {
        return Err(Error::Parse {
            line: entry.line,
            msg: format!("trailing content after value for key '{}'", entry.key),
        });
    }
    Ok(value * scale)
}

fn parse_integer(entry: &KvEntry) -> Result<u64> {
    entry.value.parse().map_err(|_| Error::Parse {
        line: entry.line,
        msg: format!("invalid integer '{}' for key '{}'", entry.value, entry.key),
    })
}

/// Comma- or whitespace-separated list of plain numbers.
fn parse_list(entry: &KvEntry) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for token in entry.value.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        let value: f64 = token.parse().map_err(|_| Error::Parse {
            line: entry.line,
            msg: format!("invalid number '{token}' in list for key '{}'", entry.key),
        })?;
        out.push(value);
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: entry.line,
            msg: format!("empty list for key '{}'", entry.key),
        });
    }
    Ok(out)
}

/// Parses a membrane spec from key-value text.
///
/// All twelve membrane keys are required; `contact_multiplier` is optional
/// and defaults to 1.
pub fn parse_membrane_spec(text: &str) -> Result<MembraneSpec> {
    let entries = parse_kv(text)?;
    let mut fields: [Option<f64>; 12] = [None; 12];
    let mut multiplier: u32 = 1;
    const KEYS: [&str; 12] = [
        "width_W",
        "length_L",
        "thickness_t",
        "rim_gap_g",
        "residual_stress_sigma0",
        "youngs_modulus_E",
        "poisson_nu",
        "zero_pressure_modulus_E0",
        "stiffness_pressure_factor_eta",
        "max_bulge_h_max",
        "shear_strength_tau_s",
        "rim_friction_mu_rim",
    ];
    for entry in &entries {
        if entry.key == "contact_multiplier" {
            let count = parse_integer(entry)?;
            multiplier = u32::try_from(count).map_err(|_| Error::Parse {
                line: entry.line,
                msg: format!("contact_multiplier {count} out of range"),
            })?;
            continue;
        }
        match KEYS.iter().position(|&k| k == entry.key) {
            Some(idx) => fields[idx] = Some(parse_quantity(entry)?),
            None => {
                return Err(Error::Parse {
                    line: entry.line,
                    msg: format!("unknown key '{}'", entry.key),
                })
            }
        }
    }
    for (idx, key) in KEYS.iter().enumerate() {
        if fields[idx].is_none() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("missing required key '{key}'"),
            });
        }
    }
    let spec = MembraneSpec {
        width_w: fields[0].unwrap(),
        length_l: fields[1].unwrap(),
        thickness_t: fields[2].unwrap(),
        rim_gap_g: fields[3].unwrap(),
        residual_stress_sigma0: fields[4].unwrap(),
        youngs_modulus_e: fields[5].unwrap(),
        poisson_nu: fields[6].unwrap(),
        zero_pressure_modulus_e0: fields[7].unwrap(),
        stiffness_pressure_factor_eta: fields[8].unwrap(),
        max_bulge_h_max: fields[9].unwrap(),
        shear_strength_tau_s: fields[10].unwrap(),
        rim_friction_mu_rim: fields[11].unwrap(),
        contact_multiplier: multiplier,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn load_membrane_spec(path: impl AsRef<Path>) -> Result<MembraneSpec> {
    parse_membrane_spec(&std::fs::read_to_string(path)?)
}

/// Parses a sweep definition from key-value text.
///
/// Required keys: `force_grid_n`, `pressure_grid_kpa`, `mass_kg`, `trials`.
/// Optional: `gravity_m_s2` (9.81), `finger_count` (2), `tau_s_rel_sigma`
/// (0), `mass_rel_sigma` (0), `seed` (0).
pub fn parse_sweep_config(text: &str) -> Result<SweepConfig> {
    let entries = parse_kv(text)?;
    let mut force_grid = None;
    let mut pressure_grid_kpa = None;
    let mut mass = None;
    let mut trials = None;
    let mut gravity = STANDARD_GRAVITY;
    let mut finger_count = 2u32;
    let mut tau_sigma = 0.0;
    let mut mass_sigma = 0.0;
    let mut seed = 0u64;
    for entry in &entries {
        match entry.key.as_str() {
            "force_grid_n" => force_grid = Some(parse_list(entry)?),
            "pressure_grid_kpa" => pressure_grid_kpa = Some(parse_list(entry)?),
            "mass_kg" => mass = Some(parse_quantity(entry)?),
            "trials" => {
                let count = parse_integer(entry)?;
                trials = Some(u32::try_from(count).map_err(|_| Error::Parse {
                    line: entry.line,
                    msg: format!("trials {count} out of range"),
                })?);
            }
            "gravity_m_s2" => gravity = parse_quantity(entry)?,
            "finger_count" => {
                let count = parse_integer(entry)?;
                finger_count = u32::try_from(count).map_err(|_| Error::Parse {
                    line: entry.line,
                    msg: format!("finger_count {count} out of range"),
                })?;
            }
            "tau_s_rel_sigma" => tau_sigma = parse_quantity(entry)?,
            "mass_rel_sigma" => mass_sigma = parse_quantity(entry)?,
            "seed" => seed = parse_integer(entry)?,
            other => {
                return Err(Error::Parse {
                    line: entry.line,
                    msg: format!("unknown key '{other}'"),
                })
            }
        }
    }
    let missing = |key: &str| Error::Parse {
        line: 0,
        msg: format!("missing required key '{key}'"),
    };
    let config = SweepConfig {
        force_grid: force_grid.ok_or_else(|| missing("force_grid_n"))?,
        pressure_grid: pressure_grid_kpa
            .ok_or_else(|| missing("pressure_grid_kpa"))?
            .into_iter()
            .map(crate::units::from_kpa)
            .collect(),
        scenario_base: GraspScenario {
            mass: mass.ok_or_else(|| missing("mass_kg"))?,
            gravity,
            finger_count,
            normal_force: 0.0,
            pressure: 0.0,
        },
        noise: NoiseModel {
            tau_s_rel_sigma: tau_sigma,
            mass_rel_sigma: mass_sigma,
            seed,
        },
        trials: trials.ok_or_else(|| missing("trials"))?,
    };
    config.validate()?;
    Ok(config)
}

pub fn load_sweep_config(path: impl AsRef<Path>) -> Result<SweepConfig> {
    parse_sweep_config(&std::fs::read_to_string(path)?)
}
