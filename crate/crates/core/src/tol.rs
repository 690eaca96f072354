//! Numerical tolerances shared across the crate.
//!
//! Geometric equality is always judged relative to the length scale of the
//! object being tested (edge length, diameter), never absolutely.

/// Relative tolerance for coordinate and distance equality.
pub const REL_TOL: f64 = 1e-9;

/// Two vectors are parallel when `|cos angle| >= 1 - PARALLEL_TOL`.
pub const PARALLEL_TOL: f64 = 1e-9;

/// Separation tolerance for the overlap test, as a fraction of the diameter.
pub const SEPARATION_REL_TOL: f64 = 1e-9;

/// Default upper bound on the number of copies a Hutchinson iterate may hold.
pub const DEFAULT_COPY_CAP: u64 = 10_000_000;

/// `|a - b| <= tol * scale`.
pub fn approx_eq(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= REL_TOL * scale.abs().max(f64::MIN_POSITIVE)
}
