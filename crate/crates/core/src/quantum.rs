//! States, observables and their moment matrices.
//!
//! A state on `M_d` is `φ(x) = tr(ρx)` for a density matrix `ρ`. For a
//! centered tuple `x_1..x_n` the Gram matrix `M_ij = φ(x_i x_j)/2` is PSD,
//! `M + Mᵀ` is the covariance matrix (`φ{x_i, x_j}/2`) and `M - Mᵀ` is the
//! commutator matrix (`φ[x_i, x_j]/2`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{is_psd, Matrix, tol::PSD_TOL};

/// Inputs whose relative Hermitian deviation is below this are symmetrized;
/// above it they are rejected.
pub const INPUT_HERMITIAN_TOL: f64 = 1e-8;

/// Allowed `|tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-10;

/// Allowed relative asymmetry of the covariance before it is an error.
pub const COVARIANCE_SYMMETRY_TOL: f64 = 1e-10;

fn symmetrized(m: &Matrix) -> Result<Matrix> {
    m.square_dim()?;
    let deviation = m.relative_hermitian_deviation();
    if deviation > INPUT_HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(m.hermitian_part())
}

/// A Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable(Matrix);

impl Observable {
    pub fn new(matrix: Matrix) -> Result<Self> {
        Ok(Self(symmetrized(&matrix)?))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// Density matrix: PSD with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState(Matrix);

impl DensityState {
    pub fn new(rho: Matrix) -> Result<Self> {
        let rho = symmetrized(&rho)?;
        if !is_psd(&rho, PSD_TOL)? {
            return Err(Error::InvalidState("density matrix is not PSD".into()));
        }
        let tr = rho.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        Ok(Self(rho))
    }

    /// `I / d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(Matrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || !norm2.is_finite() || norm2 <= 0.0 {
            return Err(Error::InvalidState("state vector must be nonzero and finite".into()));
        }
        let n = psi.len();
        let rho = Matrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() / norm2);
        Ok(Self(rho.hermitian_part()))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `U ρ U*`.
    pub fn conjugated(&self, u: &Matrix) -> Result<Self> {
        Self::new(&(u * &self.0) * &u.adjoint())
    }
}

/// Nonempty ordered list of observables of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ObservableTuple(Vec<Observable>);

impl ObservableTuple {
    pub fn new(observables: Vec<Observable>) -> Result<Self> {
        let first = observables
            .first()
            .ok_or(Error::TooFewObservables { needed: 1, found: 0 })?;
        let d = first.dim();
        for o in &observables {
            if o.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: o.dim(),
                });
            }
        }
        Ok(Self(observables))
    }

    pub fn from_matrices(ms: Vec<Matrix>) -> Result<Self> {
        Self::new(ms.into_iter().map(Observable::new).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn observables(&self) -> &[Observable] {
        &self.0
    }

    pub fn matrices(&self) -> impl Iterator<Item = &Matrix> {
        self.0.iter().map(Observable::matrix)
    }

    pub fn get(&self, i: usize) -> Option<&Matrix> {
        self.0.get(i).map(Observable::matrix)
    }

    /// Every observable multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self(self.0.iter().map(|o| Observable(o.0.scale_real(c))).collect())
    }

    /// `U x_j U*` for every observable.
    pub fn conjugated(&self, u: &Matrix) -> Result<Self> {
        let ud = u.adjoint();
        Self::from_matrices(self.matrices().map(|x| &(u * x) * &ud).collect())
    }

    pub(crate) fn require(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            return Err(Error::TooFewObservables {
                needed,
                found: self.len(),
            });
        }
        Ok(())
    }

    fn check_state(&self, state: &DensityState) -> Result<()> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.dim(),
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// `φ(x) = tr(ρx)`.
pub fn expectation(state: &DensityState, x: &Matrix) -> Result<Complex64> {
    if x.shape() != (state.dim(), state.dim()) {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            found: x.rows(),
        });
    }
    Ok(state.matrix().trace_of_product(x))
}

/// Replaces each `x_j` by `x_j - φ(x_j) I`.
pub fn center(state: &DensityState, tuple: &ObservableTuple) -> Result<ObservableTuple> {
    tuple.check_state(state)?;
    let centered = tuple
        .observables()
        .iter()
        .map(|o| {
            let mean = state.matrix().trace_of_product(o.matrix()).re;
            Observable(o.matrix().add_identity(-mean))
        })
        .collect();
    Ok(ObservableTuple(centered))
}

fn check_pair(x: &Matrix, y: &Matrix) -> Result<()> {
    let n = x.square_dim()?;
    if y.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.rows(),
        });
    }
    Ok(())
}

/// `xy - yx`.
pub fn commutator(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    check_pair(x, y)?;
    Ok(&(x * y) - &(y * x))
}

/// `xy + yx`.
pub fn anticommutator(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    check_pair(x, y)?;
    Ok(&(x * y) + &(y * x))
}

#[derive(Clone, Debug)]
pub struct MomentMatrices {
    /// `M_ij = φ(x_i x_j) / 2`, Hermitian PSD.
    pub gram: Matrix,
    /// `M + Mᵀ = 2 Re M`, real symmetric PSD.
    pub covariance: Matrix,
    /// `M - Mᵀ = 2i Im M`, Hermitian with purely imaginary entries.
    pub commutator: Matrix,
    /// The input tuple was centered before the moments were taken.
    pub centered: bool,
}

impl MomentMatrices {
    pub fn len(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Mᵀ`.
    pub fn gram_transpose(&self) -> Matrix {
        self.gram.transpose()
    }

    /// Variances `σ²(x_j) = φ(x_j²)`, the covariance diagonal.
    pub fn variances(&self) -> Vec<f64> {
        self.covariance.real_diagonal()
    }
}

/// Largest `|φ(x_j)|` below which a tuple is treated as already centered.
const CENTERED_TOL: f64 = 1e-12;

/// Moment matrices of `tuple` under `state`; uncentered tuples are centered
/// first and `centered` records that.
pub fn moment_matrices(state: &DensityState, tuple: &ObservableTuple) -> Result<MomentMatrices> {
    tuple.check_state(state)?;
    let already = tuple
        .matrices()
        .all(|x| state.matrix().trace_of_product(x).norm() <= CENTERED_TOL * x.max_abs().max(1.0));
    let work;
    let xs = if already {
        tuple
    } else {
        work = center(state, tuple)?;
        &work
    };

    let n = xs.len();
    let rho = state.matrix();
    let rho_x: Vec<Matrix> = xs.matrices().map(|x| rho * x).collect();
    let mats: Vec<&Matrix> = xs.matrices().collect();
    let raw = Matrix::from_fn(n, n, |i, j| rho_x[i].trace_of_product(mats[j]) * 0.5);

    // φ(x_j x_i) = conj φ(x_i x_j), so M is Hermitian up to rounding; the
    // deviation is exactly the imaginary residue of M + Mᵀ.
    let deviation = raw.relative_hermitian_deviation();
    if deviation > COVARIANCE_SYMMETRY_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let gram = raw.hermitian_part();
    let covariance = Matrix::from_fn(n, n, |i, j| Complex64::new(2.0 * gram[(i, j)].re, 0.0));
    let commutator = Matrix::from_fn(n, n, |i, j| Complex64::new(0.0, 2.0 * gram[(i, j)].im));
    Ok(MomentMatrices {
        gram,
        covariance,
        commutator,
        centered: !already,
    })
}

/// `σ²(x_j) = φ(x_j²)` after centering.
pub fn variances(state: &DensityState, tuple: &ObservableTuple) -> Result<Vec<f64>> {
    Ok(moment_matrices(state, tuple)?.variances())
}
