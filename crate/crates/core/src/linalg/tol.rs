//! Numerical tolerances shared by the spectral routines.

/// Largest accepted `||A - A*||_F / max(1, ||A||_F)` for Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// A matrix is PSD iff its minimum eigenvalue is at least
/// `-PSD_TOL * max(1, ||A||_2)`.
pub const PSD_TOL: f64 = 1e-10;

/// Positive definite means minimum eigenvalue above
/// `PD_FLOOR * max(1, ||A||_2)`.
pub const PD_FLOOR: f64 = 1e-12;

/// Shift applied to singular geometric-mean operands, scaled by
/// `max(1, tr A + tr B)`.
pub const MEAN_REGULARIZATION: f64 = 1e-12;

pub(crate) fn psd_threshold(tol: f64, spectral_norm: f64) -> f64 {
    -tol * spectral_norm.max(1.0)
}

pub(crate) fn pd_floor(spectral_norm: f64) -> f64 {
    PD_FLOOR * spectral_norm.max(1.0)
}
