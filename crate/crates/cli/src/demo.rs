//! Worked examples printed by `ur demo`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use ur_core::linalg::{fourier_block_average, pinch_block_diagonal, BlockStructure};
use ur_core::relations::{
    block_commutator_trace_bound, frobenius_chain, gram_negative_example, pinching_trace_step,
    robertson_sup, row_sum_bound, schrodinger_heisenberg, square_order_counterexample,
    variance_mean_bound, variance_product_bound, COUNTEREXAMPLE_THRESHOLD, DEFAULT_TOL,
};
use ur_core::sampling::random_hermitian;
use ur_core::{BoundReport, DensityState, Matrix, ObservableTuple};

use crate::campaign::trial_rng;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemoCase {
    GramExample,
    PauliEqualities,
    SquareOrderCounterexample,
    PinchingIdentity,
}

impl DemoCase {
    pub const ALL: [DemoCase; 4] = [
        DemoCase::GramExample,
        DemoCase::PauliEqualities,
        DemoCase::SquareOrderCounterexample,
        DemoCase::PinchingIdentity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DemoCase::GramExample => "gram-example",
            DemoCase::PauliEqualities => "pauli-equalities",
            DemoCase::SquareOrderCounterexample => "square-order-counterexample",
            DemoCase::PinchingIdentity => "pinching-identity",
        }
    }
}

impl FromStr for DemoCase {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        DemoCase::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct DemoParams {
    pub theta: f64,
    /// Grid points over `[0, 2π)` for the Gram example; 0 skips the grid.
    pub grid: usize,
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
}

impl Default for DemoParams {
    fn default() -> Self {
        Self {
            theta: 0.0,
            grid: 64,
            seed: 1,
            trials: 1000,
            dim: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DemoOutput {
    pub text: String,
    /// The phenomenon was reproduced.
    pub ok: bool,
}

pub fn run_demo(case: DemoCase, params: &DemoParams) -> DemoOutput {
    match case {
        DemoCase::GramExample => gram_example(params),
        DemoCase::PauliEqualities => pauli_equalities(),
        DemoCase::SquareOrderCounterexample => square_order(params),
        DemoCase::PinchingIdentity => pinching_identity(params),
    }
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.rows() {
        s.push_str("  [");
        for j in 0..m.cols() {
            let z = m[(i, j)];
            let _ = write!(s, " {:>10.6}{:+.6}i", z.re, z.im);
        }
        s.push_str(" ]\n");
    }
    s
}

fn gram_example(p: &DemoParams) -> DemoOutput {
    let g = gram_negative_example(p.theta);
    let mut text = format!("theta = {}\nH1 =\n{}H2 =\n{}", p.theta, format_matrix(&g.h1), format_matrix(&g.h2));
    let _ = writeln!(text, "G = (<H_i e_j, H_j e_i>) =\n{}det G = {}", format_matrix(&g.gram), g.det);
    let mut ok = g.det < 0.0;
    if p.grid > 0 {
        let dets: Vec<f64> = (0..p.grid)
            .map(|i| gram_negative_example(2.0 * std::f64::consts::PI * i as f64 / p.grid as f64).det)
            .collect();
        let max = dets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let negative = dets.iter().filter(|&&d| d < 0.0).count();
        let _ = writeln!(
            text,
            "grid of {} points over [0, 2pi): {negative} negative determinants, largest {max}",
            p.grid
        );
        ok &= negative == p.grid;
    }
    DemoOutput { text, ok }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrices() -> [Matrix; 3] {
    [
        Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]),
        Matrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]),
        Matrix::from_real_diagonal(&[1.0, -1.0]),
    ]
}

fn report_line(text: &mut String, name: &str, r: &BoundReport, expected: (f64, f64)) -> bool {
    let ok = (r.lhs - expected.0).abs() <= 1e-9 && (r.rhs - expected.1).abs() <= 1e-9;
    let _ = writeln!(
        text,
        "{} {name:<36} lhs = {:<20} rhs = {:<20} expected ({}, {})",
        if ok { "ok  " } else { "FAIL" },
        r.lhs,
        r.rhs,
        expected.0,
        expected.1
    );
    ok
}

fn pauli_equalities() -> DemoOutput {
    let [sx, sy, sz] = pauli_matrices();
    let ket0 = DensityState::pure(&[c(1.0, 0.0), c(0.0, 0.0)]).expect("unit vector");
    let pair = ObservableTuple::from_matrices(vec![sx.clone(), sy.clone()]).expect("Pauli pair");
    let triple = ObservableTuple::from_matrices(vec![sx.clone(), sy.clone(), sz]).expect("Pauli triple");
    let tol = DEFAULT_TOL;
    let mut text = String::from("state |0><0|, observables (sx, sy)\n");
    let mut ok = true;
    let run = |r: ur_core::Result<BoundReport>| r.expect("Pauli instance is valid");
    ok &= report_line(&mut text, "robertson_sup", &run(robertson_sup(&ket0, &pair, tol)), (1.0, 1.0));
    ok &= report_line(
        &mut text,
        "schrodinger_heisenberg",
        &run(schrodinger_heisenberg(&ket0, &sx, &sy, tol)),
        (1.0, 1.0),
    );
    ok &= report_line(&mut text, "variance_product_bound", &run(variance_product_bound(&ket0, &pair, tol)), (1.0, 1.0));
    ok &= report_line(&mut text, "variance_mean_bound", &run(variance_mean_bound(&ket0, &pair, tol)), (1.0, 1.0));
    ok &= report_line(&mut text, "row_sum_bound", &run(row_sum_bound(&ket0, &pair, tol)), (1.0, 1.0));
    let chain = frobenius_chain(&ket0, &pair, tol).expect("Pauli instance is valid");
    let values = chain.numbers();
    let chain_ok = values
        .iter()
        .zip([2.0, 2.0, 4.0, 4.0])
        .all(|(v, e)| (v - e).abs() <= 1e-9);
    ok &= chain_ok;
    let _ = writeln!(
        text,
        "{} {:<36} {:?} expected [2, 2, 4, 4]",
        if chain_ok { "ok  " } else { "FAIL" },
        "frobenius_chain",
        values
    );
    text.push_str("observables without a state\n");
    ok &= report_line(
        &mut text,
        "block_commutator_trace_bound (sx, sy)",
        &run(block_commutator_trace_bound(&pair, tol)),
        (8.0, 8.0),
    );
    ok &= report_line(
        &mut text,
        "block_commutator_trace_bound (sx,sy,sz)",
        &run(block_commutator_trace_bound(&triple, tol)),
        (16.0, 24.0),
    );
    DemoOutput { text, ok }
}

fn square_order(p: &DemoParams) -> DemoOutput {
    let mut rng = trial_rng(p.seed, 0);
    match square_order_counterexample(p.dim, p.trials, &mut rng) {
        None => DemoOutput {
            text: format!(
                "no PSD pair with (A+B)^2 - (A-B)^2 not PSD found in {} trials at dim {}\n",
                p.trials, p.dim
            ),
            ok: false,
        },
        Some(w) => {
            let text = format!(
                "found at trial {} (dim {}, seed {})\nA =\n{}B =\n{}min eigenvalue of (A+B)^2 - (A-B)^2 = {} (threshold {})\n",
                w.trial,
                p.dim,
                p.seed,
                format_matrix(&w.a),
                format_matrix(&w.b),
                w.min_eigenvalue,
                COUNTEREXAMPLE_THRESHOLD
            );
            DemoOutput { text, ok: true }
        }
    }
}

fn pinching_identity(p: &DemoParams) -> DemoOutput {
    let mut rng = trial_rng(p.seed, 0);
    let a = random_hermitian(6, &mut rng);
    let blocks = BlockStructure::new(vec![2, 2, 2]).expect("positive sizes");
    let pinched = pinch_block_diagonal(&a, &blocks).expect("6 = 2 + 2 + 2");
    let averaged = fourier_block_average(&a, &blocks).expect("6 = 2 + 2 + 2");
    let deviation = pinched.max_abs_diff(&averaged);
    let mut text = format!(
        "random 6x6 Hermitian, blocks (2, 2, 2), seed {}\nmax |pinch(A) - (1/3) sum_m U_m A U_m*| = {deviation:e}\n",
        p.seed
    );
    let tuple = ObservableTuple::from_matrices((0..3).map(|_| random_hermitian(2, &mut rng)).collect())
        .expect("Hermitian triple");
    let step = pinching_trace_step(&tuple, DEFAULT_TOL).expect("three observables");
    for r in step.reports() {
        let _ = writeln!(
            text,
            "{} {:<16} lhs = {:<24e} rhs = {:e}",
            if r.satisfied { "ok  " } else { "FAIL" },
            r.label.as_deref().unwrap_or(""),
            r.lhs,
            r.rhs
        );
    }
    let ok = deviation < 1e-12 && step.reports().iter().all(|r| r.satisfied);
    DemoOutput { text, ok }
}
