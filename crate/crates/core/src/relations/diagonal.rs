//! Diagonal-product and row-sum bounds with nonvanishing left sides.

use super::determinant::check_psd_pair;
use super::report::{BoundReport, RelationId, Witness};
use crate::error::Result;
use crate::linalg::{abs_matrix, operator_norm, Matrix};
use crate::quantum::{moment_matrices, DensityState, MomentMatrices, ObservableTuple};

/// Variances at most this fraction of `max(1, max σ²)` count as zero.
pub const DEGENERATE_VARIANCE: f64 = 1e-12;

/// `(Π v_j)^{1/n}` for nonnegative `v`; entries within rounding of zero
/// (negative) are clamped to zero.
fn geometric_mean_of(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 1.0;
    }
    if v.iter().any(|&x| x <= 0.0) {
        return 0.0;
    }
    (v.iter().map(|x| x.ln()).sum::<f64>() / v.len() as f64).exp()
}

/// `[Π_j |A-B|_jj]^{2/n} <= (tr A + tr B)/n · [Π_j (A+B)_jj]^{1/n}`.
pub fn diagonal_product_bound(a: &Matrix, b: &Matrix, tol: f64) -> Result<BoundReport> {
    check_psd_pair(a, b)?;
    Ok(diagonal_product_unchecked(a, b, tol))
}

fn diagonal_product_unchecked(a: &Matrix, b: &Matrix, tol: f64) -> BoundReport {
    let n = a.rows() as f64;
    let abs_diff = abs_matrix(&(a - b)).expect("difference of Hermitian matrices");
    let sum = a + b;
    let ld = abs_diff.real_diagonal();
    let rd = sum.real_diagonal();
    let lhs = geometric_mean_of(&ld).powi(2);
    let rhs = sum.trace().re / n * geometric_mean_of(&rd);
    BoundReport::new(RelationId::DiagonalProductBound, lhs, rhs, tol)
        .with_witness(Witness::Diagonals { lhs: ld, rhs: rd })
}

pub(crate) fn diagonal_product_moments(m: &MomentMatrices, tol: f64) -> BoundReport {
    diagonal_product_unchecked(&m.gram, &m.gram_transpose(), tol)
}

/// Diagonal of `|(φ[x_i, x_j])|` where `(φ[x_i, x_j]) = 2(M - Mᵀ)`.
fn abs_commutator_diagonal(m: &MomentMatrices) -> Vec<f64> {
    abs_matrix(&m.commutator.scale_real(2.0))
        .expect("commutator matrix is Hermitian")
        .real_diagonal()
}

fn is_degenerate(variances: &[f64]) -> bool {
    let top = variances.iter().fold(1.0_f64, |m, &v| m.max(v));
    variances.iter().any(|&v| v <= DEGENERATE_VARIANCE * top)
}

fn finish(
    relation: RelationId,
    lhs: f64,
    rhs: f64,
    variances: &[f64],
    tol: f64,
) -> BoundReport {
    if is_degenerate(variances) {
        BoundReport::degenerate(relation, lhs, rhs, tol)
            .with_witness(Witness::Note("zero variance; left side vanishes".into()))
    } else {
        BoundReport::new(relation, lhs, rhs, tol)
    }
}

/// `¼ Π_k |(φ[x_i,x_j])|_kk^{2/n} <= (Σσ²/n)(Πσ²)^{1/n}`.
pub fn variance_product_bound(
    state: &DensityState,
    tuple: &ObservableTuple,
    tol: f64,
) -> Result<BoundReport> {
    tuple.require(2)?;
    Ok(variance_product_moments(&moment_matrices(state, tuple)?, tol))
}

pub(crate) fn variance_product_moments(m: &MomentMatrices, tol: f64) -> BoundReport {
    let n = m.len() as f64;
    let diag = abs_commutator_diagonal(m);
    let var = m.variances();
    let lhs = 0.25 * geometric_mean_of(&diag).powi(2);
    let rhs = var.iter().sum::<f64>() / n * geometric_mean_of(&var);
    finish(RelationId::VarianceProductBound, lhs, rhs, &var, tol).with_witness(Witness::Diagonals {
        lhs: diag,
        rhs: var,
    })
}

/// `½ Π_k |(φ[x_i,x_j])|_kk^{1/n} <= Σσ²/n`.
pub fn variance_mean_bound(
    state: &DensityState,
    tuple: &ObservableTuple,
    tol: f64,
) -> Result<BoundReport> {
    Ok(variance_mean_moments(&moment_matrices(state, tuple)?, tol))
}

pub(crate) fn variance_mean_moments(m: &MomentMatrices, tol: f64) -> BoundReport {
    let n = m.len() as f64;
    let diag = abs_commutator_diagonal(m);
    let var = m.variances();
    let lhs = 0.5 * geometric_mean_of(&diag);
    let rhs = var.iter().sum::<f64>() / n;
    finish(RelationId::VarianceMeanBound, lhs, rhs, &var, tol)
}

/// `¼ Π_k [Σ_{i≠k} |φ[x_i,x_k]|²]^{1/n} <= ||Cov||·(Σσ²/n)^{1/2}·(Πσ)^{1/n}`,
/// `||Cov||` the operator norm.
pub fn row_sum_bound(state: &DensityState, tuple: &ObservableTuple, tol: f64) -> Result<BoundReport> {
    tuple.require(2)?;
    Ok(row_sum_moments(&moment_matrices(state, tuple)?, tol))
}

pub(crate) fn row_sum_moments(m: &MomentMatrices, tol: f64) -> BoundReport {
    let n = m.len();
    let rows: Vec<f64> = (0..n)
        .map(|k| {
            (0..n)
                .filter(|&i| i != k)
                .map(|i| (m.commutator[(i, k)] * 2.0).norm_sqr())
                .sum()
        })
        .collect();
    let var = m.variances();
    let lhs = 0.25 * geometric_mean_of(&rows);
    let sd: Vec<f64> = var.iter().map(|v| v.max(0.0).sqrt()).collect();
    let rhs = operator_norm(&m.covariance)
        * (var.iter().sum::<f64>() / n as f64).sqrt()
        * geometric_mean_of(&sd);
    finish(RelationId::RowSumBound, lhs, rhs, &var, tol)
        .with_witness(Witness::Note("||Cov|| is the operator norm".into()))
        .with_witness(Witness::Diagonals { lhs: rows, rhs: sd })
}
