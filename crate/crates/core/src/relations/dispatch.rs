//! Evaluate any relation by id on a (state, tuple) instance.

use super::block::{block_commutator_trace_bound, pinching_trace_step, two_observable_trace_bound};
use super::determinant::{
    det_sum_difference_moments, robertson_from_moments, schrodinger_heisenberg,
};
use super::diagonal::{
    diagonal_product_moments, row_sum_moments, variance_mean_moments, variance_product_moments,
};
use super::majorization::{
    frobenius_chain_values, geometric_mean_majorization, norm_bound_from_moments, NormFamily,
};
use super::report::{BoundReport, RelationId};
use crate::error::Result;
use crate::quantum::{moment_matrices, DensityState, MomentMatrices, ObservableTuple};

/// All reports produced by one relation on one instance.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub relation: RelationId,
    pub reports: Vec<BoundReport>,
}

impl Evaluation {
    pub fn satisfied(&self) -> bool {
        self.reports.iter().all(|r| r.satisfied)
    }

    /// Report with the smallest margin.
    pub fn worst(&self) -> Option<&BoundReport> {
        self.reports
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
    }

    /// Largest resolved `lhs / rhs` over the reports; `None` if no report
    /// has a right side above the tolerance floor.
    pub fn tightness(&self) -> Option<f64> {
        self.reports
            .iter()
            .filter_map(BoundReport::resolved_tightness)
            .reduce(f64::max)
    }
}

/// Evaluates `relation`. Pair relations (`det_sum_difference`,
/// `geometric_mean_majorization`, `diagonal_product_bound`) take
/// `(A, B) = (M, Mᵀ)`; the two-observable relations use the first two
/// observables; the block relations use the tuple as given, uncentered.
pub fn evaluate(
    relation: RelationId,
    state: &DensityState,
    tuple: &ObservableTuple,
    tol: f64,
) -> Result<Evaluation> {
    let m = moment_matrices(state, tuple)?;
    evaluate_with_moments(relation, state, tuple, &m, tol)
}

/// Like [`evaluate`], reusing precomputed moment matrices.
pub fn evaluate_with_moments(
    relation: RelationId,
    state: &DensityState,
    tuple: &ObservableTuple,
    m: &MomentMatrices,
    tol: f64,
) -> Result<Evaluation> {
    tuple.require(relation.min_observables())?;
    let reports = match relation {
        RelationId::DetSumDifference => vec![det_sum_difference_moments(m, tol)],
        RelationId::RobertsonSup => vec![robertson_from_moments(m, tol)],
        RelationId::SchrodingerHeisenberg => {
            let x = tuple.get(0).unwrap();
            let y = tuple.get(1).unwrap();
            vec![schrodinger_heisenberg(state, x, y, tol)?]
        }
        RelationId::GeometricMeanMajorization => {
            vec![geometric_mean_majorization(&m.gram, &m.gram_transpose(), tol)?]
        }
        RelationId::NormBound => norm_bound_from_moments(m, &NormFamily::standard(), tol)?,
        RelationId::FrobeniusChain => {
            let var_sum = m.variances().iter().sum();
            frobenius_chain_values(m, var_sum, tol).links()
        }
        RelationId::DiagonalProductBound => vec![diagonal_product_moments(m, tol)],
        RelationId::VarianceProductBound => vec![variance_product_moments(m, tol)],
        RelationId::VarianceMeanBound => vec![variance_mean_moments(m, tol)],
        RelationId::RowSumBound => vec![row_sum_moments(m, tol)],
        RelationId::BlockCommutatorTraceBound => vec![block_commutator_trace_bound(tuple, tol)?],
        RelationId::TwoObservableTraceBound => {
            let h1 = tuple.get(0).unwrap();
            let h2 = tuple.get(1).unwrap();
            two_observable_trace_bound(h1, h2, tol)?.links()
        }
        RelationId::PinchingTraceStep => pinching_trace_step(tuple, tol)?.reports(),
    };
    Ok(Evaluation { relation, reports })
}

/// Evaluates every relation in `relations`, sharing one moment computation.
pub fn evaluate_all(
    relations: &[RelationId],
    state: &DensityState,
    tuple: &ObservableTuple,
    tol: f64,
) -> Vec<(RelationId, Result<Evaluation>)> {
    let m = moment_matrices(state, tuple);
    relations
        .iter()
        .map(|&r| {
            let ev = match &m {
                Ok(m) => evaluate_with_moments(r, state, tuple, m, tol),
                Err(e) => Err(e.clone()),
            };
            (r, ev)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use num_complex::Complex64;

    fn pauli_on_ket0() -> (DensityState, ObservableTuple) {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let sx = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let sy = Matrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]);
        (
            DensityState::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap(),
            ObservableTuple::from_matrices(vec![sx, sy]).unwrap(),
        )
    }

    #[test]
    fn every_relation_holds_on_pauli_pair() {
        let (rho, t) = pauli_on_ket0();
        for (r, ev) in evaluate_all(&RelationId::ALL, &rho, &t, 1e-9) {
            let ev = ev.unwrap();
            assert!(ev.satisfied(), "{r}");
            assert!(!ev.reports.is_empty());
        }
    }

    #[test]
    fn robertson_is_tight_on_pauli_pair() {
        let (rho, t) = pauli_on_ket0();
        let ev = evaluate(RelationId::RobertsonSup, &rho, &t, 1e-9).unwrap();
        assert!((ev.tightness().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_observables() {
        let (rho, t) = pauli_on_ket0();
        let one = ObservableTuple::from_matrices(vec![t.get(0).unwrap().clone()]).unwrap();
        assert!(evaluate(RelationId::PinchingTraceStep, &rho, &one, 1e-9).is_err());
        assert!(evaluate(RelationId::RobertsonSup, &rho, &one, 1e-9).is_ok());
    }
}
