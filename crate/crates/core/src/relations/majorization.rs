//! Bounds through the geometric mean: `|A - B| <= (A+B) # U(A+B)U*` and the
//! unitarily invariant norm inequalities it implies.

use super::determinant::check_psd_pair;
use super::report::{BoundReport, ChainReport, RelationId, Witness};
use crate::error::Result;
use crate::linalg::{
    geometric_mean, jacobi, polar_hermitian, schatten_from_singular_values, singular_values,
    Matrix,
};
use crate::quantum::{expectation, center, moment_matrices, DensityState, MomentMatrices, ObservableTuple};

/// Loewner-order check of `(A+B) # U(A+B)U* - |A - B| >= 0`, with
/// `U = sign(A - B)`.
///
/// Reported as `0 <= λ_min(gap) / max(1, ||A+B||_2)`, so the verdict reads
/// "the gap's minimum eigenvalue is at least `-tol` times the scale".
pub fn geometric_mean_majorization(a: &Matrix, b: &Matrix, tol: f64) -> Result<BoundReport> {
    check_psd_pair(a, b)?;
    let sum = a + b;
    let polar = polar_hermitian(&(a - b))?;
    let u = polar.unitary;
    let rotated = &(&u * &sum) * &u.adjoint();
    let mean = geometric_mean(&sum, &rotated)?;
    let gap = &mean.mean - &polar.modulus;
    let min_eigenvalue = jacobi(&gap.hermitian_part(), false).eigenvalues[0];
    let scale = jacobi(&sum.hermitian_part(), false)
        .eigenvalues
        .last()
        .copied()
        .unwrap_or(0.0)
        .abs()
        .max(1.0);
    let mut report = BoundReport::new(
        RelationId::GeometricMeanMajorization,
        0.0,
        min_eigenvalue / scale,
        tol,
    )
    .with_witness(Witness::Unitary(u))
    .with_witness(Witness::Gap {
        min_eigenvalue,
        scale,
    });
    if mean.regularized {
        report = report.with_witness(Witness::Note(format!(
            "singular operands regularized by {:e} I",
            mean.epsilon
        )));
    }
    Ok(report)
}

/// Unitarily invariant norms compared in [`norm_bound`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormFamily {
    /// Every Ky Fan `k`-norm; dominance in all of them implies dominance in
    /// every unitarily invariant norm.
    KyFanAll,
    /// Schatten `p`-norm; `f64::INFINITY` is the operator norm.
    Schatten(f64),
}

impl NormFamily {
    /// All Ky Fan norms plus Schatten `p = 1, 2, 3, ∞`.
    pub fn standard() -> Vec<NormFamily> {
        vec![
            NormFamily::KyFanAll,
            NormFamily::Schatten(1.0),
            NormFamily::Schatten(2.0),
            NormFamily::Schatten(3.0),
            NormFamily::Schatten(f64::INFINITY),
        ]
    }
}

/// `|||φ[x_i, x_j]/2||| <= |||Cov|||` for each requested norm.
pub fn norm_bound(
    state: &DensityState,
    tuple: &ObservableTuple,
    families: &[NormFamily],
    tol: f64,
) -> Result<Vec<BoundReport>> {
    norm_bound_from_moments(&moment_matrices(state, tuple)?, families, tol)
}

pub(crate) fn norm_bound_from_moments(
    m: &MomentMatrices,
    families: &[NormFamily],
    tol: f64,
) -> Result<Vec<BoundReport>> {
    let sc = singular_values(&m.commutator);
    let sv = singular_values(&m.covariance);
    let mut out = Vec::new();
    for fam in families {
        match *fam {
            NormFamily::KyFanAll => {
                let (mut l, mut r) = (0.0, 0.0);
                for (k, (a, b)) in sc.iter().zip(&sv).enumerate() {
                    l += a;
                    r += b;
                    out.push(
                        BoundReport::new(RelationId::NormBound, l, r, tol)
                            .with_label(format!("ky_fan_{}", k + 1)),
                    );
                }
            }
            NormFamily::Schatten(p) => {
                if p.is_nan() || p < 1.0 {
                    return Err(crate::error::Error::InvalidP(p));
                }
                let label = if p.is_infinite() {
                    "schatten_inf".to_string()
                } else {
                    format!("schatten_{p}")
                };
                out.push(
                    BoundReport::new(
                        RelationId::NormBound,
                        schatten_from_singular_values(&sc, p),
                        schatten_from_singular_values(&sv, p),
                        tol,
                    )
                    .with_label(label),
                );
            }
        }
    }
    Ok(out)
}

/// `½Σ_{i<j}|φ[x_i,x_j]|² <= ||Cov||_2² <= (tr Cov)² <= (Σ Var x_j)²`.
///
/// The variances are recomputed as `φ(x_j²)` from the centered observables,
/// so the last link checks the covariance diagonal independently.
pub fn frobenius_chain(state: &DensityState, tuple: &ObservableTuple, tol: f64) -> Result<ChainReport> {
    let m = moment_matrices(state, tuple)?;
    let centered = center(state, tuple)?;
    let mut var_sum = 0.0;
    for x in centered.matrices() {
        var_sum += expectation(state, &(x * x))?.re;
    }
    Ok(frobenius_chain_values(&m, var_sum, tol))
}

pub(crate) fn frobenius_chain_values(m: &MomentMatrices, var_sum: f64, tol: f64) -> ChainReport {
    let n = m.len();
    let mut comm_sq = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            // φ[x_i, x_j] = 2 C_ij
            comm_sq += (m.commutator[(i, j)] * 2.0).norm_sqr();
        }
    }
    let cov_fro = m.covariance.frobenius_norm();
    let cov_tr = m.covariance.trace().re;
    ChainReport::new(
        RelationId::FrobeniusChain,
        vec![
            ("half_commutator_sum".into(), 0.5 * comm_sq),
            ("covariance_frobenius_sq".into(), cov_fro * cov_fro),
            ("covariance_trace_sq".into(), cov_tr * cov_tr),
            ("variance_sum_sq".into(), var_sum * var_sum),
        ],
        tol,
    )
}
