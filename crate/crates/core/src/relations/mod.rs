//! Evaluators for the uncertainty relations and the matrix inequalities
//! behind them.

mod block;
mod determinant;
mod diagonal;
mod dispatch;
mod majorization;
mod report;

pub use block::{
    block_anticommutator_matrix, block_commutator_matrix, block_commutator_trace_bound,
    gram_negative_example, pinching_trace_step, two_observable_trace_bound, GramExample,
    PinchingStep,
};
pub use determinant::{
    det_sum_difference, robertson_sup, schrodinger_heisenberg, square_order_counterexample,
    square_order_gap, SquareOrderWitness, COUNTEREXAMPLE_THRESHOLD,
};
pub use diagonal::{
    diagonal_product_bound, row_sum_bound, variance_mean_bound, variance_product_bound,
    DEGENERATE_VARIANCE,
};
pub use dispatch::{evaluate, evaluate_all, evaluate_with_moments, Evaluation};
pub use majorization::{
    frobenius_chain, geometric_mean_majorization, norm_bound, NormFamily,
};
pub use report::{
    within_tolerance, BoundReport, ChainReport, RelationId, UnknownRelation, Witness, DEFAULT_TOL,
};
