//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Jacobi is slower than tridiagonal QR but every matrix here is small
//! (at most a few dozen rows), the output is deterministic, and small
//! eigenvalues of graded positive definite matrices come out with high
//! relative accuracy. The geometric mean of nearly singular operands
//! depends on that.

use num_complex::Complex64;

use super::matrix::{Matrix, ZERO};
use super::tol::HERMITIAN_TOL;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Nondecreasing.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` belongs to `eigenvalues[k]`.
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Largest eigenvalue modulus, i.e. the operator norm of the input.
    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `V diag(f(λ)) V*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &w) in fl.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.map(|l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Rejects non-square input and input whose relative Hermitian deviation
/// exceeds [`HERMITIAN_TOL`]; the Hermitian part is decomposed.
pub fn eigh(h: &Matrix) -> Result<EigenDecomposition> {
    check_hermitian(h)?;
    Ok(jacobi(&h.hermitian_part(), true))
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(h: &Matrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    Ok(jacobi(&h.hermitian_part(), false).eigenvalues)
}

pub(crate) fn check_hermitian(h: &Matrix) -> Result<()> {
    h.square_dim()?;
    let deviation = h.relative_hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Decomposes `h`, which must already be exactly Hermitian.
pub(crate) fn jacobi(h: &Matrix, want_vectors: bool) -> EigenDecomposition {
    let n = h.rows();
    let mut a: Vec<Complex64> = h.as_slice().to_vec();
    let mut v = if want_vectors {
        Matrix::identity(n).into_vec()
    } else {
        Vec::new()
    };
    let at = |i: usize, j: usize| i * n + j;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[at(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[at(p, p)].re;
                let aqq = a[at(q, q)].re;
                // Negligible relative to the local diagonal: leave it.
                if r <= 0.5 * f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
                    a[at(p, q)] = ZERO;
                    a[at(q, p)] = ZERO;
                    continue;
                }
                if r < f64::MIN_POSITIVE {
                    a[at(p, q)] = ZERO;
                    a[at(q, p)] = ZERO;
                    continue;
                }
                rotated = true;

                let tau = (aqq - app) / (2.0 * r);
                let t = if tau.abs() > 1e150 {
                    0.5 / tau
                } else {
                    let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ph = apq / r;
                let s_ph = ph * s;
                let s_phc = ph.conj() * s;

                // A <- A J, J = [[c, s·ph], [-s·conj(ph), c]] on (p, q).
                for k in 0..n {
                    let akp = a[at(k, p)];
                    let akq = a[at(k, q)];
                    a[at(k, p)] = akp * c - akq * s_phc;
                    a[at(k, q)] = akp * s_ph + akq * c;
                }
                // A <- J* A.
                for k in 0..n {
                    let apk = a[at(p, k)];
                    let aqk = a[at(q, k)];
                    a[at(p, k)] = apk * c - aqk * s_ph;
                    a[at(q, k)] = apk * s_phc + aqk * c;
                }
                a[at(p, q)] = ZERO;
                a[at(q, p)] = ZERO;
                a[at(p, p)] = Complex64::new(app - t * r, 0.0);
                a[at(q, q)] = Complex64::new(aqq + t * r, 0.0);

                if want_vectors {
                    for k in 0..n {
                        let vkp = v[at(k, p)];
                        let vkq = v[at(k, q)];
                        v[at(k, p)] = vkp * c - vkq * s_phc;
                        v[at(k, q)] = vkp * s_ph + vkq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[at(i, i)].re.total_cmp(&a[at(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[at(i, i)].re).collect();
    let eigenvectors = if want_vectors {
        Matrix::from_fn(n, n, |i, j| v[at(i, order[j])])
    } else {
        Matrix::zeros(0, 0)
    };
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}
