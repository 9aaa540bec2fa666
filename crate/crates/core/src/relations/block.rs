//! Trace-norm bounds on the block commutator matrix `([H_i, H_j])`, which
//! need no state.

use num_complex::Complex64;

use super::report::{BoundReport, ChainReport, RelationId, Witness};
use crate::error::{Error, Result};
use crate::linalg::{
    block_matrix, fourier_block_average, hermitian_trace_norm, jacobi, matrix_sqrt,
    pinch_block_diagonal, tol::HERMITIAN_TOL, trace_norm, BlockStructure,
    Matrix,
};
use crate::quantum::{anticommutator, commutator, ObservableTuple};

/// `kn x kn` matrix with block `(i, j)` equal to `[H_i, H_j]`.
pub fn block_commutator_matrix(tuple: &ObservableTuple) -> Result<Matrix> {
    pairwise_blocks(tuple, commutator)
}

/// `kn x kn` matrix with block `(i, j)` equal to `{H_i, H_j}`.
pub fn block_anticommutator_matrix(tuple: &ObservableTuple) -> Result<Matrix> {
    pairwise_blocks(tuple, anticommutator)
}

fn pairwise_blocks(
    tuple: &ObservableTuple,
    op: fn(&Matrix, &Matrix) -> Result<Matrix>,
) -> Result<Matrix> {
    let hs: Vec<&Matrix> = tuple.matrices().collect();
    let blocks = hs
        .iter()
        .map(|a| hs.iter().map(|b| op(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    block_matrix(&blocks)
}

fn hermitian_block_commutator(tuple: &ObservableTuple) -> Result<Matrix> {
    let a = block_commutator_matrix(tuple)?;
    let deviation = a.relative_hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(a.hermitian_part())
}

/// `||([H_i, H_j])||_1 <= (k - 1) tr({H_i, H_j})`.
pub fn block_commutator_trace_bound(tuple: &ObservableTuple, tol: f64) -> Result<BoundReport> {
    tuple.require(2)?;
    let k = tuple.len();
    let a = hermitian_block_commutator(tuple)?;
    let ev = jacobi(&a, false).eigenvalues;
    let lhs: f64 = ev.iter().map(|l| l.abs()).sum();
    let anti_trace = block_anticommutator_matrix(tuple)?.trace().re;
    let rhs = (k - 1) as f64 * anti_trace;
    Ok(BoundReport::new(RelationId::BlockCommutatorTraceBound, lhs, rhs, tol)
        .with_witness(Witness::Eigenvalues(ev)))
}

/// The four-term chain
/// `2 tr|[H1,H2]| <= 2(||H1H2||_1 + ||H2H1||_1) <= 4 sqrt(tr H1² tr H2²) <= 2(tr H1² + tr H2²)`.
pub fn two_observable_trace_bound(h1: &Matrix, h2: &Matrix, tol: f64) -> Result<ChainReport> {
    let pair = ObservableTuple::from_matrices(vec![h1.clone(), h2.clone()])?;
    let (h1, h2) = (pair.get(0).unwrap(), pair.get(1).unwrap());
    // i[H1, H2] is Hermitian with the same singular values.
    let comm = commutator(h1, h2)?.scale(Complex64::new(0.0, 1.0)).hermitian_part();
    let t1 = h1.trace_of_product(h1).re;
    let t2 = h2.trace_of_product(h2).re;
    Ok(ChainReport::new(
        RelationId::TwoObservableTraceBound,
        vec![
            ("commutator_trace_norm".into(), 2.0 * hermitian_trace_norm(&comm)?),
            (
                "product_trace_norms".into(),
                2.0 * (trace_norm(&(h1 * h2)) + trace_norm(&(h2 * h1))),
            ),
            ("cauchy_schwarz".into(), 4.0 * (t1 * t2).sqrt()),
            ("arithmetic_mean".into(), 2.0 * (t1 + t2)),
        ],
        tol,
    ))
}

/// The pinching step of the block commutator bound.
#[derive(Clone, Debug)]
pub struct PinchingStep {
    /// `||A||_1 <= Σ_i tr((-Σ_j [H_i,H_j]²)^{1/2})`.
    pub step: BoundReport,
    /// `pinch(A²)` against the directly assembled `D`; `lhs` is the largest
    /// entry deviation relative to `max(1, max|A²|)`, `rhs` is 0.
    pub identity: BoundReport,
    /// `D^{1/2} - avg_m U_m |A| U_m* >= 0`, as `0 <= λ_min / max(1, ||D^{1/2}||)`.
    pub concavity: BoundReport,
}

impl PinchingStep {
    pub fn reports(&self) -> Vec<BoundReport> {
        vec![self.step.clone(), self.identity.clone(), self.concavity.clone()]
    }
}

pub fn pinching_trace_step(tuple: &ObservableTuple, tol: f64) -> Result<PinchingStep> {
    tuple.require(2)?;
    let k = tuple.len();
    let d = tuple.dim();
    let hs: Vec<&Matrix> = tuple.matrices().collect();
    let a = hermitian_block_commutator(tuple)?;
    let blocks = BlockStructure::uniform(k, d)?;

    let ea = jacobi(&a, true);
    let lhs: f64 = ea.eigenvalues.iter().map(|l| l.abs()).sum();
    let abs_a = ea.map(f64::abs);

    // D_i = -Σ_j [H_i, H_j]^2 = Σ_j [H_i, H_j]* [H_i, H_j]
    let mut direct = Matrix::zeros(k * d, k * d);
    let mut sqrt_blocks = Matrix::zeros(k * d, k * d);
    let mut rhs = 0.0;
    for (i, hi) in hs.iter().enumerate() {
        let mut di = Matrix::zeros(d, d);
        for hj in &hs {
            let c = commutator(hi, hj)?;
            di = &di + &(&c.adjoint() * &c);
        }
        let di = di.hermitian_part();
        let root = matrix_sqrt(&di)?;
        rhs += root.trace().re;
        direct.set_block(i * d, i * d, &di);
        sqrt_blocks.set_block(i * d, i * d, &root);
    }
    let step = BoundReport::new(RelationId::PinchingTraceStep, lhs, rhs, tol).with_label("trace_step");

    let a2 = &a * &a;
    let pinched = pinch_block_diagonal(&a2, &blocks)?;
    let deviation = pinched.max_abs_diff(&direct) / a2.max_abs().max(1.0);
    let identity = BoundReport::new(RelationId::PinchingTraceStep, deviation, 0.0, tol)
        .with_label("pinch_identity");

    let averaged = fourier_block_average(&abs_a, &blocks)?;
    let gap = (&sqrt_blocks - &averaged).hermitian_part();
    let ev = jacobi(&gap, false).eigenvalues;
    let scale = jacobi(&sqrt_blocks, false)
        .eigenvalues
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(1.0);
    let concavity = BoundReport::new(RelationId::PinchingTraceStep, 0.0, ev[0] / scale, tol)
        .with_label("concavity")
        .with_witness(Witness::Gap {
            min_eigenvalue: ev[0],
            scale,
        });

    Ok(PinchingStep {
        step,
        identity,
        concavity,
    })
}

/// `H_1(θ)`, `H_2(θ)` and the matrix `G_ij = ⟨H_i e_j, H_j e_i⟩`, which is
/// not PSD.
#[derive(Clone, Debug)]
pub struct GramExample {
    pub theta: f64,
    pub h1: Matrix,
    pub h2: Matrix,
    pub gram: Matrix,
    pub det: f64,
}

pub fn gram_negative_example(theta: f64) -> GramExample {
    let (s, c) = theta.sin_cos();
    let h1 = Matrix::from_real_rows(&[[s / 2.0, c], [c, s]]);
    let h2 = Matrix::from_real_rows(&[[c, s], [s, c / 2.0]]);
    let hs = [&h1, &h2];
    // ⟨u, v⟩ = Σ u_k conj(v_k); column j of H_i is H_i e_j.
    let gram = Matrix::from_fn(2, 2, |i, j| {
        (0..2).map(|k| hs[i][(k, j)] * hs[j][(k, i)].conj()).sum()
    });
    let det = (gram[(0, 0)] * gram[(1, 1)] - gram[(0, 1)] * gram[(1, 0)]).re;
    GramExample {
        theta,
        h1,
        h2,
        gram,
        det,
    }
}
