//! Unit conversions for the I/O boundary.
//!
//! The library works in SI units throughout (m, Pa, N, kg, s). Configuration
//! files, CSV schemas, and the CLI speak the bench units the hardware is
//! quoted in: millimetres and kilopascals. Conversions happen exactly once,
//! at parse or print time.

/// Millimetres to metres.
pub fn from_mm(mm: f64) -> f64 {
    mm * 1e-3
}

/// Metres to millimetres.
pub fn to_mm(m: f64) -> f64 {
    m * 1e3
}

/// Kilopascals to pascals.
pub fn from_kpa(kpa: f64) -> f64 {
    kpa * 1e3
}

/// Pascals to kilopascals.
pub fn to_kpa(pa: f64) -> f64 {
    pa * 1e-3
}

/// Megapascals to pascals.
pub fn from_mpa(mpa: f64) -> f64 {
    mpa * 1e6
}

/// Pascals to megapascals.
pub fn to_mpa(pa: f64) -> f64 {
    pa * 1e-6
}

/// Square metres to square millimetres.
pub fn to_mm2(m2: f64) -> f64 {
    m2 * 1e6
}
