//! Contact state of the bulged membrane against a flat rigid object.
//!
//! Classifies the three contact regimes (rim only, partial rim, full
//! silicone), splits the normal load between the silicone cap and the rigid
//! rim, and evaluates the friction force through the shear-strength model
//! `F_f = tau_s * A` on the silicone side plus Coulomb friction on the rim.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::membrane::{
    bulge_height, curvature_radius, effective_modulus, protrusion, HeightModel, MembraneSpec,
};

/// Which surfaces carry the normal load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactRegime {
    /// The membrane never reaches the object plane; only the rim touches.
    RimOnly,
    /// The cap flattens down to its protrusion and the rim carries the rest.
    PartialRim,
    /// The cap carries the entire load without the rim touching.
    FullSilicone,
}

impl fmt::Display for ContactRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ContactRegime::RimOnly => "rim",
            ContactRegime::PartialRim => "partial",
            ContactRegime::FullSilicone => "full",
        };
        f.write_str(s)
    }
}

impl FromStr for ContactRegime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rim" => Ok(ContactRegime::RimOnly),
            "partial" => Ok(ContactRegime::PartialRim),
            "full" => Ok(ContactRegime::FullSilicone),
            other => Err(format!("unknown contact regime '{other}'")),
        }
    }
}

/// Hertz sphere-on-plane contact state under one normal load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HertzContact {
    /// Contact radius (m).
    pub radius: f64,
    /// Contact area (m^2).
    pub area: f64,
    /// Indentation (m).
    pub indentation: f64,
}

/// Hertz contact of an elastic sphere of radius `r` against a rigid plane.
///
/// `a_c = (3 N r / (4 E*))^(1/3)`, `A = pi a_c^2`, and
/// `delta = (3 N / (4 E* sqrt(r)))^(2/3)`; all three vanish at zero load and
/// satisfy `delta * r = a_c^2` identically.
pub fn hertz_contact(r: f64, e_star: f64, n: f64) -> Result<HertzContact> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::Domain(format!(
            "Hertz radius {r} m must be positive"
        )));
    }
    if e_star <= 0.0 || !e_star.is_finite() {
        return Err(Error::Domain(format!(
            "Hertz modulus {e_star} Pa must be positive"
        )));
    }
    if !n.is_finite() || n < 0.0 {
        return Err(Error::Domain(format!(
            "Hertz load {n} N must be nonnegative"
        )));
    }
    let radius = (3.0 * n * r / (4.0 * e_star)).cbrt();
    let area = std::f64::consts::PI * radius * radius;
    let indentation = (3.0 * n / (4.0 * e_star * r.sqrt())).cbrt().powi(2);
    Ok(HertzContact {
        radius,
        area,
        indentation,
    })
}

/// Full contact state at one `(pressure, load)` point.
///
/// Loads split exactly: `silicone_load + rim_load == normal load` to machine
/// round-off, with the silicone share nonnegative and capped at the total.
/// `contact_radius` is the effective radius `sqrt(area / pi)`; it equals the
/// per-contact Hertz radius when `contact_multiplier` is 1. `indentation` is
/// per contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactSolution {
    pub regime: ContactRegime,
    /// Effective contact radius (m); 0 in the rim-only regime.
    pub contact_radius: f64,
    /// Silicone-object contact area (m^2).
    pub contact_area: f64,
    /// Hertz indentation of the silicone under its carried load (m).
    pub indentation: f64,
    /// Portion of the normal load carried by the membrane (N).
    pub silicone_load: f64,
    /// Portion of the normal load carried by the rigid rim (N).
    pub rim_load: f64,
    /// Friction force (N).
    pub friction_force: f64,
    /// `friction_force / normal load`; 0 at zero load by convention so grid
    /// sweeps over loads that include 0 stay total.
    pub mu_eff: f64,
}

/// Membrane state shared by regime classification and the full solve.
struct BulgeState {
    /// Protrusion past the rim (m).
    s: f64,
    /// Cap curvature radius (m).
    r: f64,
    /// Effective modulus at this pressure (Pa).
    e_star: f64,
}

/// `None` when the cap stays at or below the rim plane.
fn bulge_state(spec: &MembraneSpec, model: HeightModel, p: f64) -> Result<Option<BulgeState>> {
    let h = bulge_height(spec, model, p)?;
    if h <= spec.rim_gap_g {
        return Ok(None);
    }
    Ok(Some(BulgeState {
        s: protrusion(spec, h),
        r: curvature_radius(spec, h)?,
        e_star: effective_modulus(spec, p),
    }))
}

fn check_load(n: f64) -> Result<()> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::Domain(format!(
            "normal load {n} N must be nonnegative"
        )));
    }
    Ok(())
}

/// The regime at `(p, N)` under the selected height model.
pub fn classify_regime_with(
    spec: &MembraneSpec,
    model: HeightModel,
    p: f64,
    n: f64,
) -> Result<ContactRegime> {
    check_load(n)?;
    let Some(state) = bulge_state(spec, model, p)? else {
        return Ok(ContactRegime::RimOnly);
    };
    let per_contact = n / spec.contact_multiplier as f64;
    let full_load = hertz_contact(state.r, state.e_star, per_contact)?;
    if state.s >= full_load.indentation {
        Ok(ContactRegime::FullSilicone)
    } else {
        Ok(ContactRegime::PartialRim)
    }
}

/// [`classify_regime_with`] under the default exact height model.
pub fn classify_regime(spec: &MembraneSpec, p: f64, n: f64) -> Result<ContactRegime> {
    classify_regime_with(spec, HeightModel::Exact, p, n)
}

/// Contact state, load split, and friction at `(p, N)`.
pub fn contact_solve_with(
    spec: &MembraneSpec,
    model: HeightModel,
    p: f64,
    n: f64,
) -> Result<ContactSolution> {
    check_load(n)?;
    let mu_rim = spec.rim_friction_mu_rim;
    let Some(state) = bulge_state(spec, model, p)? else {
        return Ok(ContactSolution {
            regime: ContactRegime::RimOnly,
            contact_radius: 0.0,
            contact_area: 0.0,
            indentation: 0.0,
            silicone_load: 0.0,
            rim_load: n,
            friction_force: mu_rim * n,
            mu_eff: if n > 0.0 { mu_rim } else { 0.0 },
        });
    };

    let k = spec.contact_multiplier as f64;
    let tau_s = spec.shear_strength_tau_s;
    let full_load = hertz_contact(state.r, state.e_star, n / k)?;

    if state.s >= full_load.indentation {
        // The cap swallows the whole load before flattening to the rim plane.
        let area = k * full_load.area;
        let friction_force = tau_s * area;
        return Ok(ContactSolution {
            regime: ContactRegime::FullSilicone,
            contact_radius: (area / std::f64::consts::PI).sqrt(),
            contact_area: area,
            indentation: full_load.indentation,
            silicone_load: n,
            rim_load: 0.0,
            friction_force,
            mu_eff: if n > 0.0 { friction_force / n } else { 0.0 },
        });
    }

    // The cap flattens until its indentation equals the protrusion; that
    // pins the silicone share of the load, and the rim takes the remainder
    // as Coulomb friction.
    let per_contact = (4.0 / 3.0) * state.e_star * state.r.sqrt() * state.s.powf(1.5);
    let silicone_load = (k * per_contact).min(n);
    let rim_load = n - silicone_load;
    let hz = hertz_contact(state.r, state.e_star, silicone_load / k)?;
    let area = k * hz.area;
    let friction_force = tau_s * area + mu_rim * rim_load;
    Ok(ContactSolution {
        regime: ContactRegime::PartialRim,
        contact_radius: (area / std::f64::consts::PI).sqrt(),
        contact_area: area,
        indentation: hz.indentation,
        silicone_load,
        rim_load,
        friction_force,
        mu_eff: if n > 0.0 { friction_force / n } else { 0.0 },
    })
}

/// [`contact_solve_with`] under the default exact height model.
pub fn contact_solve(spec: &MembraneSpec, p: f64, n: f64) -> Result<ContactSolution> {
    contact_solve_with(spec, HeightModel::Exact, p, n)
}

/// Effective friction coefficient at `(p, N)`; undefined at zero load.
pub fn friction_coefficient_with(
    spec: &MembraneSpec,
    model: HeightModel,
    p: f64,
    n: f64,
) -> Result<f64> {
    if !n.is_finite() || n <= 0.0 {
        return Err(Error::Domain(format!(
            "friction coefficient undefined at normal load {n} N"
        )));
    }
    Ok(contact_solve_with(spec, model, p, n)?.mu_eff)
}

/// [`friction_coefficient_with`] under the default exact height model.
pub fn friction_coefficient(spec: &MembraneSpec, p: f64, n: f64) -> Result<f64> {
    friction_coefficient_with(spec, HeightModel::Exact, p, n)
}
