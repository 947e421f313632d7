//! Numerical tolerances shared across the crate and its tests.

/// Norm drift allowed per unitary application.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Agreement between two independent computations of the same amplitudes.
pub const MATCH_TOL: f64 = 1e-10;

/// Distance from probability one accepted as exact success.
pub const SUCCESS_TOL: f64 = 1e-9;

/// Unitarity check applied when a gate is constructed.
pub const GATE_UNITARITY_TOL: f64 = 1e-10;

/// A real iteration count this close to an integer is treated as that integer.
pub const INTEGRALITY_TOL: f64 = 1e-9;

/// Residual at which the phase solver declares convergence.
pub const SOLVER_TOL: f64 = 1e-12;

/// Largest |arg(c_last / c_first)| accepted without a corrective phase.
pub const RELATIVE_PHASE_TOL: f64 = 1e-6;

/// Slack on the domain of `acos` before a closed form is declared out of range.
pub const COS_DOMAIN_TOL: f64 = 1e-12;
