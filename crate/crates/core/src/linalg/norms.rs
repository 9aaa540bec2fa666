//! Unitarily invariant norms.

use super::eigen::jacobi;
use super::matrix::Matrix;
use super::structure::block_matrix_rect;
use crate::error::{Error, Result};

/// Relative Hermitian deviation under which the spectrum is used directly.
const HERMITIAN_SHORTCUT: f64 = 1e-14;

/// Singular values in nonincreasing order; `min(rows, cols)` of them.
///
/// Hermitian input uses `|λ|`. Otherwise the Hermitian dilation
/// `[[0, A], [A*, 0]]` is diagonalized, whose nonnegative eigenvalues are
/// the singular values. This avoids squaring the condition number the way
/// `eig(A*A)` would.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    let m = a.rows().min(a.cols());
    let mut sv: Vec<f64> = if a.is_square() && a.relative_hermitian_deviation() <= HERMITIAN_SHORTCUT {
        jacobi(&a.hermitian_part(), false)
            .eigenvalues
            .into_iter()
            .map(f64::abs)
            .collect()
    } else {
        let dilation = block_matrix_rect(&[
            vec![Matrix::zeros(a.rows(), a.rows()), a.clone()],
            vec![a.adjoint(), Matrix::zeros(a.cols(), a.cols())],
        ]);
        let ev = jacobi(&dilation.hermitian_part(), false).eigenvalues;
        ev.into_iter().rev().take(m).map(|s| s.max(0.0)).collect()
    };
    sv.sort_by(|x, y| y.total_cmp(x));
    sv.truncate(m);
    sv
}

/// Schatten `p`-norm, `p >= 1`; `f64::INFINITY` selects the operator norm.
pub fn schatten_norm(a: &Matrix, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidP(p));
    }
    Ok(schatten_from_singular_values(&singular_values(a), p))
}

/// `p` is assumed valid.
pub fn schatten_from_singular_values(sv: &[f64], p: f64) -> f64 {
    let top = sv.iter().fold(0.0_f64, |m, &s| m.max(s));
    if top == 0.0 {
        return 0.0;
    }
    if p.is_infinite() {
        return top;
    }
    if p == 1.0 {
        return sv.iter().sum();
    }
    if p == 2.0 {
        return sv.iter().map(|s| s * s).sum::<f64>().sqrt();
    }
    top * sv.iter().map(|s| (s / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn trace_norm(a: &Matrix) -> f64 {
    singular_values(a).iter().sum()
}

/// Entrywise Frobenius norm (Schatten 2).
pub fn frobenius_norm(a: &Matrix) -> f64 {
    a.frobenius_norm()
}

/// Largest singular value.
pub fn operator_norm(a: &Matrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Sum of the `k` largest singular values, `1 <= k <= min(rows, cols)`.
pub fn ky_fan_norm(a: &Matrix, k: usize) -> Result<f64> {
    let max = a.rows().min(a.cols());
    if k == 0 || k > max {
        return Err(Error::InvalidK { k, max });
    }
    Ok(singular_values(a).iter().take(k).sum())
}

/// All Ky Fan norms `k = 1..=min(rows, cols)`, i.e. partial sums of the
/// singular values.
pub fn ky_fan_norms(a: &Matrix) -> Vec<f64> {
    singular_values(a)
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect()
}
