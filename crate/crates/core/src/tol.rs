//! Numerical tolerances used across the solver.
//!
//! Every threshold the library compares against lives here so that the
//! numerical contract of the crate can be read in one place.

/// Relative tolerance for geometric coincidence tests (tangency of circles,
/// a point lying on a circle, a line passing through a point).
pub const GEOMETRIC: f64 = 1e-9;

/// Absolute tolerance on the terminal constraint residuals `phi1`, `phi2`.
pub const RESIDUAL: f64 = 1e-9;

/// Segment parameters below this are treated as degenerate and clamped to zero.
pub const DEGENERATE_SEGMENT: f64 = 1e-10;

/// Two paths whose lengths differ by at most this are reported as co-minimal.
pub const EQUAL_LENGTH: f64 = 1e-9;

/// Admissible gap between a candidate's closed-form length and the length
/// of the point-to-point path realized to the same terminal configuration.
pub const REALIZATION_LENGTH: f64 = 1e-7;

/// Collinearity residual for the CCC concatenation points, relative to
/// `|A|·|B|`.
pub const COLLINEARITY: f64 = 1e-7;

/// Center-distance band (relative to `rho`) inside which an opposite-turn
/// tangent is snapped to a zero-length straight segment.
pub const TANGENT_SNAP: f64 = 1e-11;

/// Roots of a polynomial closer than this are merged.
pub const ROOT_MERGE: f64 = 1e-9;

/// Complex roots whose imaginary part is below `NEAR_REAL·(1 + |re|)` are
/// treated as real.
pub const NEAR_REAL: f64 = 1e-8;

/// Residual bound factor for polished polynomial roots.
pub const ROOT_RESIDUAL: f64 = 1e-10;
