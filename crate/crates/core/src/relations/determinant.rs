//! Determinant inequalities for sums and differences of PSD matrices.

use rand::Rng;

use super::report::{BoundReport, RelationId, Witness};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_det, is_psd, jacobi, tol::PSD_TOL, Matrix};
use crate::quantum::{
    center, expectation, moment_matrices, DensityState, MomentMatrices, Observable,
    ObservableTuple,
};
use crate::sampling::random_wishart;

pub(crate) fn check_psd_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    let n = a.square_dim()?;
    if b.square_dim()? != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.rows(),
        });
    }
    for m in [a, b] {
        if !is_psd(m, PSD_TOL)? {
            return Err(Error::NotPsd {
                min_eigenvalue: jacobi(&m.hermitian_part(), false).eigenvalues[0],
            });
        }
    }
    Ok(())
}

/// `det(A - B)^2 <= det(A + B)^2` for PSD `A`, `B`.
pub fn det_sum_difference(a: &Matrix, b: &Matrix, tol: f64) -> Result<BoundReport> {
    check_psd_pair(a, b)?;
    Ok(det_pair(RelationId::DetSumDifference, a, b, tol))
}

fn det_pair(relation: RelationId, a: &Matrix, b: &Matrix, tol: f64) -> BoundReport {
    let diff = hermitian_det(&(a - b));
    let sum = hermitian_det(&(a + b));
    BoundReport::new(relation, diff * diff, sum * sum, tol)
}

/// `det(φ[x_i, x_j]/2)^2 <= det(Cov)^2`, i.e. the determinant inequality for
/// the pair `(M, Mᵀ)`.
pub fn robertson_sup(state: &DensityState, tuple: &ObservableTuple, tol: f64) -> Result<BoundReport> {
    Ok(robertson_from_moments(&moment_matrices(state, tuple)?, tol))
}

pub(crate) fn robertson_from_moments(m: &MomentMatrices, tol: f64) -> BoundReport {
    let c = hermitian_det(&m.commutator);
    let v = hermitian_det(&m.covariance);
    BoundReport::new(RelationId::RobertsonSup, c * c, v * v, tol)
}

/// `|φ[x, y]|^2 / 4 <= φ(x²)φ(y²) - (Re φ(yx))^2` for centered `x`, `y`.
///
/// Computed from the observables directly, without the moment matrices.
pub fn schrodinger_heisenberg(
    state: &DensityState,
    x: &Matrix,
    y: &Matrix,
    tol: f64,
) -> Result<BoundReport> {
    let pair = ObservableTuple::new(vec![Observable::new(x.clone())?, Observable::new(y.clone())?])?;
    let pair = center(state, &pair)?;
    let (x, y) = (pair.get(0).unwrap(), pair.get(1).unwrap());
    let xy = x * y;
    let yx = y * x;
    let comm = expectation(state, &(&xy - &yx))?;
    let lhs = 0.25 * comm.norm_sqr();
    let vx = expectation(state, &(x * x))?.re;
    let vy = expectation(state, &(y * y))?.re;
    let cross = expectation(state, &yx)?.re;
    let rhs = vx * vy - cross * cross;
    Ok(BoundReport::new(RelationId::SchrodingerHeisenberg, lhs, rhs, tol))
}

/// A PSD pair violating `(A - B)^2 <= (A + B)^2`.
#[derive(Clone, Debug)]
pub struct SquareOrderWitness {
    pub a: Matrix,
    pub b: Matrix,
    /// Minimum eigenvalue of `(A + B)^2 - (A - B)^2 = 2(AB + BA)`.
    pub min_eigenvalue: f64,
    /// 1-based trial at which the pair was found.
    pub trial: usize,
}

/// Required negativity of the witness gap.
pub const COUNTEREXAMPLE_THRESHOLD: f64 = -1e-6;

/// Rejection search for PSD pairs with `(A+B)^2 - (A-B)^2` not PSD.
///
/// Candidates are Wishart matrices; pairs that nearly commute
/// (`||AB - BA||_F < 0.1 ||A||_F ||B||_F`) are skipped since commuting pairs
/// always satisfy the order.
pub fn square_order_counterexample<R: Rng + ?Sized>(
    dim: usize,
    trials: usize,
    rng: &mut R,
) -> Option<SquareOrderWitness> {
    if dim < 2 {
        return None;
    }
    for trial in 1..=trials {
        let a = random_wishart(dim, dim, rng);
        let b = random_wishart(dim, dim, rng);
        let ab = &a * &b;
        let ba = &b * &a;
        if (&ab - &ba).frobenius_norm() < 0.1 * a.frobenius_norm() * b.frobenius_norm() {
            continue;
        }
        if let Some(min) = square_order_gap(&a, &b) {
            if min < COUNTEREXAMPLE_THRESHOLD {
                return Some(SquareOrderWitness {
                    a,
                    b,
                    min_eigenvalue: min,
                    trial,
                });
            }
        }
    }
    None
}

/// Minimum eigenvalue of `(A+B)^2 - (A-B)^2` after re-verifying that both
/// operands are PSD; `None` if they are not.
pub fn square_order_gap(a: &Matrix, b: &Matrix) -> Option<f64> {
    check_psd_pair(a, b).ok()?;
    let s = a + b;
    let d = a - b;
    let gap = &(&s * &s) - &(&d * &d);
    Some(jacobi(&gap.hermitian_part(), false).eigenvalues[0])
}

pub(crate) fn det_sum_difference_moments(m: &MomentMatrices, tol: f64) -> BoundReport {
    det_pair(RelationId::DetSumDifference, &m.gram, &m.gram_transpose(), tol)
        .with_witness(Witness::Note("A = M, B = Mᵀ".into()))
}
