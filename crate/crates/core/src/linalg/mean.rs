//! Matrix geometric mean and the affine-invariant metric on positive
//! definite matrices.
//!
//! The weighted mean `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` traces
//! the geodesic from `A` (t = 0) to `B` (t = 1) for the metric
//! `<H, K>_A = tr(A^{-1} H A^{-1} K)`; `t = 1/2` is the geometric mean, the
//! largest Hermitian `X` with `[[A, X], [X, B]] >= 0`.

use super::eigen::{check_hermitian, jacobi};
use super::functions::{pd_inverse, psd_from_eigenvalues};
use super::matrix::Matrix;
use super::structure::block_matrix;
use super::tol::{pd_floor, psd_threshold, MEAN_REGULARIZATION, PSD_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GeometricMean {
    pub mean: Matrix,
    /// Both operands were shifted by `epsilon * I` because one of them was
    /// (numerically) singular.
    pub regularized: bool,
    pub epsilon: f64,
}

/// `A # B`.
pub fn geometric_mean(a: &Matrix, b: &Matrix) -> Result<GeometricMean> {
    geodesic(a, b, 0.5)
}

/// Point `t` in `[0, 1]` of the geodesic from `a` to `b`.
pub fn geodesic(a: &Matrix, b: &Matrix, t: f64) -> Result<GeometricMean> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidWeight(t));
    }
    let n = a.square_dim()?;
    if b.square_dim()? != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.rows(),
        });
    }
    check_hermitian(a)?;
    check_hermitian(b)?;

    let ea = jacobi(&a.hermitian_part(), true);
    let eb_vals = jacobi(&b.hermitian_part(), false).eigenvalues;
    for (min, radius) in [
        (ea.min(), ea.spectral_radius()),
        (
            eb_vals.first().copied().unwrap_or(0.0),
            eb_vals.iter().fold(0.0_f64, |m, l| m.max(l.abs())),
        ),
    ] {
        if n > 0 && min < psd_threshold(PSD_TOL, radius) {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
    }

    let singular = n > 0
        && (ea.min() <= pd_floor(ea.spectral_radius())
            || eb_vals[0] <= pd_floor(eb_vals.iter().fold(0.0_f64, |m, l| m.max(l.abs()))));
    let epsilon = if singular {
        MEAN_REGULARIZATION * (a.trace().re + b.trace().re).max(1.0)
    } else {
        0.0
    };

    // Work in the eigenbasis of A so the middle factor is graded.
    let lam: Vec<f64> = ea
        .eigenvalues
        .iter()
        .map(|&l| if singular { l.max(0.0) + epsilon } else { l })
        .collect();
    let b_reg = if singular {
        // Project B onto the PSD cone before shifting.
        let eb = jacobi(&b.hermitian_part(), true);
        eb.map(|l| l.max(0.0) + epsilon)
    } else {
        b.hermitian_part()
    };
    let v = &ea.eigenvectors;
    let b_in_a = &(&v.adjoint() * &b_reg) * v;
    let inv_sqrt: Vec<f64> = lam.iter().map(|l| 1.0 / l.sqrt()).collect();
    let middle = Matrix::from_fn(n, n, |i, j| b_in_a[(i, j)] * (inv_sqrt[i] * inv_sqrt[j]))
        .hermitian_part();
    let em = jacobi(&middle, true);
    let powered = em.map(|l| if t == 0.0 { 1.0 } else { l.max(0.0).powf(t) });
    let sqrt_lam: Vec<f64> = lam.iter().map(|l| l.sqrt()).collect();
    let inner = Matrix::from_fn(n, n, |i, j| powered[(i, j)] * (sqrt_lam[i] * sqrt_lam[j]));
    let mean = (&(v * &inner) * &v.adjoint()).hermitian_part();

    Ok(GeometricMean {
        mean,
        regularized: singular,
        epsilon,
    })
}

/// `tr(A^{-1} H A^{-1} K)` for positive definite `A` and Hermitian `H`, `K`.
pub fn riemannian_inner(a: &Matrix, h: &Matrix, k: &Matrix) -> Result<f64> {
    let n = a.square_dim()?;
    for m in [h, k] {
        if m.square_dim()? != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.rows(),
            });
        }
        check_hermitian(m)?;
    }
    let inv = pd_inverse(a)?;
    let left = &inv * h;
    let right = &inv * k;
    Ok(left.trace_of_product(&right).re)
}

/// Outcome of probing the block characterization of `A # B`.
#[derive(Clone, Debug)]
pub struct MaximalityProbe {
    /// Minimum eigenvalue of `[[A, G], [G, B]]`.
    pub min_eig_at_mean: f64,
    /// Minimum eigenvalue of `[[A, G + εI], [G + εI, B]]`.
    pub min_eig_above_mean: f64,
    pub epsilon: f64,
    pub psd_at_mean: bool,
    pub psd_above_mean: bool,
}

impl MaximalityProbe {
    /// The mean sits on the boundary: PSD at `G`, not PSD just above it.
    pub fn confirms_maximality(&self) -> bool {
        self.psd_at_mean && !self.psd_above_mean
    }
}

/// Checks that `[[A, A#B], [A#B, B]]` is PSD and that raising the off-diagonal
/// block by `rel_eps * ||A#B||_2 * I` breaks positivity.
pub fn maximality_probe(a: &Matrix, b: &Matrix, rel_eps: f64) -> Result<MaximalityProbe> {
    let g = geometric_mean(a, b)?.mean;
    let g_norm = jacobi(&g, false).eigenvalues.last().copied().unwrap_or(0.0).abs();
    let epsilon = rel_eps * g_norm;
    let g_up = g.add_identity(epsilon);
    let at = block_min_eig(a, &g, b);
    let above = block_min_eig(a, &g_up, b);
    Ok(MaximalityProbe {
        min_eig_at_mean: at.0,
        min_eig_above_mean: above.0,
        epsilon,
        psd_at_mean: at.1,
        psd_above_mean: above.1,
    })
}

fn block_min_eig(a: &Matrix, x: &Matrix, b: &Matrix) -> (f64, bool) {
    let blk = block_matrix(&[vec![a.clone(), x.clone()], vec![x.clone(), b.clone()]])
        .expect("blocks share a dimension");
    let ev = jacobi(&blk.hermitian_part(), false).eigenvalues;
    (ev[0], psd_from_eigenvalues(&ev, PSD_TOL))
}
