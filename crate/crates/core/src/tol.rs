//! Numerical thresholds shared by every module.

/// Default decision tolerance (normality, PSD, witness checks, root
/// clustering).
pub const DEFAULT_TOL: f64 = 1e-8;

/// Relative tolerance for multiplicity decisions on polynomial roots.
pub const ROOT_TOL: f64 = 1e-8;

/// Poles with `|1 - |p|| < POLE_BAND` are treated as lying on the circle.
pub const POLE_BAND: f64 = 1e-6;

/// Target tail bound when choosing a certified section length.
pub const SECTION_EPS: f64 = 1e-10;

/// Relative distance under which two exactly-constructed poles are merged.
pub const MERGE_TOL: f64 = 1e-10;

/// Blaschke zeros must satisfy `|alpha| < 1 - ZERO_MARGIN`.
pub const ZERO_MARGIN: f64 = 1e-8;

/// Residue magnitude below which a principal part is treated as cancelled.
pub const RESIDUE_TOL: f64 = 1e-9;

pub(crate) fn close(a: num_complex::Complex64, b: num_complex::Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * (1.0 + a.norm().max(b.norm()))
}
