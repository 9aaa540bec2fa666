use num_complex::Complex64;

use super::eigen::jacobi;
use super::matrix::{Matrix, ONE, ZERO};
use crate::error::Result;

const HERMITIAN_ROUTE_TOL: f64 = 1e-12;

/// Determinant. Hermitian input (relative deviation at most 1e-12) uses the
/// product of eigenvalues and returns a real value; anything else goes
/// through LU with partial pivoting.
pub fn det(a: &Matrix) -> Result<Complex64> {
    a.square_dim()?;
    if a.relative_hermitian_deviation() <= HERMITIAN_ROUTE_TOL {
        return Ok(Complex64::new(hermitian_det(a), 0.0));
    }
    Ok(lu_det(a))
}

/// Product of eigenvalues of the Hermitian part.
pub(crate) fn hermitian_det(a: &Matrix) -> f64 {
    jacobi(&a.hermitian_part(), false).eigenvalues.iter().product()
}

fn lu_det(a: &Matrix) -> Complex64 {
    let n = a.rows();
    let mut m = a.clone();
    let mut d = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[(x, col)].norm().total_cmp(&m[(y, col)].norm()))
            .unwrap_or(col);
        if m[(pivot, col)] == ZERO {
            return ZERO;
        }
        if pivot != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot, j)];
                m[(pivot, j)] = tmp;
            }
            d = -d;
        }
        let p = m[(col, col)];
        d *= p;
        for i in (col + 1)..n {
            let f = m[(i, col)] / p;
            if f == ZERO {
                continue;
            }
            for j in col..n {
                let v = m[(col, j)];
                m[(i, j)] -= f * v;
            }
        }
    }
    d
}
