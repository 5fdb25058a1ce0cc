//! Numeric thresholds shared across the crate.

/// Relative comparison tolerance against the largest participating magnitude.
pub const REL: f64 = 1e-10;
/// Absolute floor used together with [`REL`].
pub const ABS: f64 = 1e-12;
/// Residual bound for constructed media and their witnesses.
pub const CONSTRUCTION: f64 = 1e-9;
/// Default threshold for A-/B-wave classification.
pub const CLASSIFICATION: f64 = 1e-8;
/// Minimum cross-residual expected to separate A-waves from B-waves.
pub const CROSS_SEPARATION: f64 = 1e-3;
/// A matrix counts as invertible when its condition estimate stays below this.
pub const INVERTIBLE_COND: f64 = 1e12;
/// Largest `σ_min/σ_max` of the restricted dispersion dyadic accepted as
/// satisfying the dispersion relation.
pub const DISPERSION: f64 = 1e-7;
/// Condition estimates above this (but invertible) raise an ill-conditioning warning.
pub const WARN_COND: f64 = 1e8;

/// `|a - b| <= max(REL * scale, ABS)`.
pub fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= (REL * scale).max(ABS)
}

/// Overridable threshold set used by the wave and detection routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub construction: f64,
    pub classification: f64,
    pub cross_separation: f64,
    pub invertible_cond: f64,
    pub dispersion: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            construction: CONSTRUCTION,
            classification: CLASSIFICATION,
            cross_separation: CROSS_SEPARATION,
            invertible_cond: INVERTIBLE_COND,
            dispersion: DISPERSION,
        }
    }
}
