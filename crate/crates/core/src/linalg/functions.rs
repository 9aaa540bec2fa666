//! Spectral functions of Hermitian matrices.

use super::eigen::{eigh, eigvalsh, EigenDecomposition};
use super::matrix::Matrix;
use super::tol::{pd_floor, psd_threshold, PSD_TOL};
use crate::error::{Error, Result};

/// PSD test: Hermitian within `tol` (relative Frobenius) and minimum
/// eigenvalue at least `-tol * max(1, ||A||_2)`.
pub fn is_psd(a: &Matrix, tol: f64) -> Result<bool> {
    a.square_dim()?;
    if a.relative_hermitian_deviation() > tol.max(super::tol::HERMITIAN_TOL) {
        return Ok(false);
    }
    let ev = super::eigen::jacobi(&a.hermitian_part(), false).eigenvalues;
    Ok(psd_from_eigenvalues(&ev, tol))
}

pub(crate) fn psd_from_eigenvalues(ev: &[f64], tol: f64) -> bool {
    let radius = ev.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    ev.first().is_none_or(|&min| min >= psd_threshold(tol, radius))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &Matrix) -> Result<f64> {
    Ok(eigvalsh(a)?.first().copied().unwrap_or(0.0))
}

fn psd_decomposition(a: &Matrix) -> Result<EigenDecomposition> {
    let e = eigh(a)?;
    if e.dim() > 0 && e.min() < psd_threshold(PSD_TOL, e.spectral_radius()) {
        return Err(Error::NotPsd {
            min_eigenvalue: e.min(),
        });
    }
    Ok(e)
}

fn pd_decomposition(a: &Matrix) -> Result<EigenDecomposition> {
    let e = eigh(a)?;
    if e.dim() > 0 && e.min() <= pd_floor(e.spectral_radius()) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: e.min(),
        });
    }
    Ok(e)
}

/// Principal square root of a PSD matrix; eigenvalues within tolerance
/// below zero are clipped to zero.
pub fn matrix_sqrt(a: &Matrix) -> Result<Matrix> {
    Ok(psd_decomposition(a)?.map(|l| l.max(0.0).sqrt()))
}

/// `A^t` for positive definite `A` and real `t`.
pub fn matrix_power(a: &Matrix, t: f64) -> Result<Matrix> {
    Ok(pd_decomposition(a)?.map(|l| l.powf(t)))
}

/// Inverse of a positive definite matrix.
pub fn pd_inverse(a: &Matrix) -> Result<Matrix> {
    Ok(pd_decomposition(a)?.map(|l| 1.0 / l))
}

/// Polar decomposition `S = U P` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianPolar {
    /// `sign(S)` with `sign(0) = +1`; unitary, Hermitian and commuting with `S`.
    pub unitary: Matrix,
    /// `|S|`.
    pub modulus: Matrix,
}

/// Eigenvalues with modulus at most this fraction of the spectral radius
/// count as zero when taking signs.
const SIGN_ZERO: f64 = 64.0 * f64::EPSILON;

pub fn polar_hermitian(s: &Matrix) -> Result<HermitianPolar> {
    let e = eigh(s)?;
    let cut = SIGN_ZERO * e.spectral_radius();
    let unitary = if e.eigenvalues.iter().all(|&l| l >= -cut) {
        Matrix::identity(e.dim())
    } else {
        e.map(|l| if l < -cut { -1.0 } else { 1.0 })
    };
    Ok(HermitianPolar {
        unitary,
        modulus: e.map(f64::abs),
    })
}

/// Spectral absolute value `|S| = (S^2)^{1/2}` of a Hermitian matrix.
pub fn abs_matrix(s: &Matrix) -> Result<Matrix> {
    Ok(eigh(s)?.map(f64::abs))
}

/// Trace norm of a Hermitian matrix as `sum |λ|`.
pub(crate) fn hermitian_trace_norm(s: &Matrix) -> Result<f64> {
    Ok(eigvalsh(s)?.iter().map(|l| l.abs()).sum())
}
