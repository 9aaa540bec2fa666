//! Acceptance criteria. Runs without the libtest harness so each criterion
//! prints exactly one `[PASS]` or `[FAIL]` line; exits nonzero on any failure.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ur_cli::campaign::{draw_instance, run_campaign, CampaignConfig};
use ur_cli::demo::pauli_matrices;
use ur_core::linalg::{
    eigvalsh, fourier_block_average, is_psd, maximality_probe, operator_norm, pinch_block_diagonal,
    tol::PSD_TOL, BlockStructure,
};
use ur_core::quantum::moment_matrices;
use ur_core::relations::{
    block_commutator_trace_bound, frobenius_chain, gram_negative_example, pinching_trace_step,
    robertson_sup, row_sum_bound, square_order_counterexample, square_order_gap,
    variance_mean_bound, variance_product_bound, BoundReport,
};
use ur_core::sampling::{random_hermitian, random_wishart};
use ur_core::{DensityState, ObservableTuple, RelationId, StateKind};

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fuzz_config() -> CampaignConfig {
    CampaignConfig {
        dims: vec![2, 3, 4, 5, 6],
        num_observables: vec![2, 3, 4, 5],
        trials: 10_000,
        seed: 20_240_601,
        relations: RelationId::ALL.to_vec(),
        tol: TOL,
        state_kinds: StateKind::ALL.to_vec(),
    }
}

fn inequality_fuzz() -> Outcome {
    let config = fuzz_config();
    let start = Instant::now();
    let result = run_campaign(&config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let short: Vec<String> = result
        .relations
        .iter()
        .filter(|(_, s)| s.trials != config.trials)
        .map(|(r, s)| format!("{r} evaluated {}", s.trials))
        .collect();
    let worst = result
        .relations
        .iter()
        .filter_map(|(r, s)| s.min_margin.map(|m| (m, *r)))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("relations were evaluated");
    check(
        result.total_violations() == 0 && result.total_errors() == 0 && short.is_empty(),
        format!(
            "{} trials x {} relations: {} violations, {} errors, smallest scaled margin {:.2e} ({}), {:.1?}{}",
            config.trials,
            config.relations.len(),
            result.total_violations(),
            result.total_errors(),
            worst.0,
            worst.1,
            elapsed,
            if short.is_empty() { String::new() } else { format!("; incomplete: {short:?}") }
        ),
    )
}

fn near(r: &BoundReport, lhs: f64, rhs: f64) -> bool {
    (r.lhs - lhs).abs() <= 1e-9 && (r.rhs - rhs).abs() <= 1e-9
}

fn pauli_battery() -> Outcome {
    let [sx, sy, _] = pauli_matrices();
    let ket0 = DensityState::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
    let t = ObservableTuple::from_matrices(vec![sx, sy]).unwrap();
    let e = |x: ur_core::Result<BoundReport>| x.map_err(|e| e.to_string());
    let rob = e(robertson_sup(&ket0, &t, TOL))?;
    let chain = frobenius_chain(&ket0, &t, TOL).map_err(|e| e.to_string())?.numbers();
    let eq9 = e(variance_mean_bound(&ket0, &t, TOL))?;
    let eq8 = e(variance_product_bound(&ket0, &t, TOL))?;
    let rows = e(row_sum_bound(&ket0, &t, TOL))?;
    let chain_ok = chain
        .iter()
        .zip([2.0, 2.0, 4.0, 4.0])
        .all(|(v, x)| (v - x).abs() <= 1e-9);
    check(
        near(&rob, 1.0, 1.0) && chain_ok && near(&eq9, 1.0, 1.0) && near(&rows, 1.0, 1.0) && near(&eq8, 1.0, 1.0),
        format!(
            "robertson ({}, {}), chain {:?}, variance mean ({}, {}), row sum ({}, {}), variance product ({}, {})",
            rob.lhs, rob.rhs, chain, eq9.lhs, eq9.rhs, rows.lhs, rows.rhs, eq8.lhs, eq8.rhs
        ),
    )
}

fn block_battery() -> Outcome {
    let [sx, sy, sz] = pauli_matrices();
    let pair = ObservableTuple::from_matrices(vec![sx.clone(), sy.clone()]).unwrap();
    let triple = ObservableTuple::from_matrices(vec![sx, sy, sz]).unwrap();
    let a = block_commutator_trace_bound(&pair, TOL).map_err(|e| e.to_string())?;
    let b = block_commutator_trace_bound(&triple, TOL).map_err(|e| e.to_string())?;
    check(
        near(&a, 8.0, 8.0) && near(&b, 16.0, 24.0),
        format!("pair ({}, {}), triple ({}, {})", a.lhs, a.rhs, b.lhs, b.rhs),
    )
}

fn gram_example() -> Outcome {
    let at_zero = gram_negative_example(0.0).det;
    let dets: Vec<f64> = (0..64)
        .map(|i| gram_negative_example(2.0 * std::f64::consts::PI * i as f64 / 64.0).det)
        .collect();
    let largest = dets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    check(
        (at_zero + 0.75).abs() <= 1e-12 && dets.iter().all(|&d| d < 0.0),
        format!("det at theta = 0 is {at_zero}, largest over 64 grid points {largest}"),
    )
}

fn counterexample() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    match square_order_counterexample(2, 1000, &mut rng) {
        None => Err("no witness in 1000 trials".into()),
        Some(w) => {
            let reverified = square_order_gap(&w.a, &w.b);
            check(
                w.min_eigenvalue < -1e-6
                    && reverified == Some(w.min_eigenvalue)
                    && is_psd(&w.a, PSD_TOL).unwrap()
                    && is_psd(&w.b, PSD_TOL).unwrap(),
                format!("witness at trial {}, min eigenvalue {:.4e}", w.trial, w.min_eigenvalue),
            )
        }
    }
}

fn pinching() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let blocks = BlockStructure::new(vec![2, 2, 2]).unwrap();
    let mut max_dev = 0.0_f64;
    for _ in 0..100 {
        let a = random_hermitian(6, &mut rng);
        let p = pinch_block_diagonal(&a, &blocks).unwrap();
        let f = fourier_block_average(&a, &blocks).unwrap();
        max_dev = max_dev.max(p.max_abs_diff(&f));
    }
    let mut worst_gap = f64::INFINITY;
    let mut all_ok = true;
    for _ in 0..100 {
        let t = ObservableTuple::from_matrices((0..3).map(|_| random_hermitian(2, &mut rng)).collect()).unwrap();
        let step = pinching_trace_step(&t, TOL).map_err(|e| e.to_string())?;
        all_ok &= step.concavity.satisfied && step.identity.satisfied;
        worst_gap = worst_gap.min(step.concavity.rhs);
    }
    check(
        max_dev < 1e-12 && all_ok,
        format!(
            "max |pinch - Fourier average| = {max_dev:.2e} over 100 matrices; smallest scaled concavity gap {worst_gap:.2e}"
        ),
    )
}

fn structural() -> Outcome {
    let config = fuzz_config();
    let mut failures = Vec::new();
    let mut worst_odd = 0.0_f64;
    for trial in 0..config.trials {
        let inst = draw_instance(&config, trial);
        let m = moment_matrices(&inst.state, &inst.tuple).map_err(|e| e.to_string())?;
        if !is_psd(&m.gram, PSD_TOL).unwrap() {
            failures.push(format!("trial {trial}: M not PSD"));
        }
        let n = m.len();
        for i in 0..n {
            for j in 0..n {
                let s = m.commutator[(i, j)] * Complex64::i();
                let t = m.commutator[(j, i)] * Complex64::i();
                if s.im != 0.0 || s.re != -t.re {
                    failures.push(format!("trial {trial}: i(M - Mt) not real skew at ({i}, {j})"));
                }
            }
        }
        if n % 2 == 1 {
            let r = robertson_sup(&inst.state, &inst.tuple, TOL).map_err(|e| e.to_string())?;
            let scale = operator_norm(&m.commutator).powi(2 * n as i32).max(1.0);
            worst_odd = worst_odd.max(r.lhs / scale);
            if r.lhs >= 1e-9 * scale {
                failures.push(format!("trial {trial}: odd-n lhs {}", r.lhs));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut probes = 0;
    for _ in 0..1000 {
        let dim = rng.random_range(2..=6);
        let a = random_wishart(dim, dim, &mut rng);
        let b = random_wishart(dim, dim, &mut rng);
        if eigvalsh(&a).unwrap()[0] <= 0.0 || eigvalsh(&b).unwrap()[0] <= 0.0 {
            failures.push("sampled pair is not positive definite".into());
            continue;
        }
        let probe = maximality_probe(&a, &b, 1e-6).map_err(|e| e.to_string())?;
        if probe.confirms_maximality() {
            probes += 1;
        } else {
            failures.push(format!("maximality probe failed: {probe:?}"));
        }
    }
    let detail = format!(
        "{} fuzz instances: Gram PSD, i(M - Mt) real skew, largest scaled odd-n lhs {worst_odd:.2e}; maximality confirmed on {probes}/1000 pairs",
        config.trials
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {} failures, first: {}", failures.len(), failures[0]))
    }
}

fn fuzz_bytes(threads: &str) -> Result<Vec<u8>, String> {
    let dir = std::env::temp_dir().join(format!("ur-acceptance-{}-{threads}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let out = dir.join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_ur"))
        .args(["fuzz", "--dims", "2,3,4,5,6", "--num-obs", "2,3,4,5", "--trials", "2000", "--seed", "42"])
        .arg("--output")
        .arg(&out)
        .env("UR_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("exit {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr)));
    }
    let bytes = std::fs::read(&out).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(bytes)
}

fn determinism() -> Outcome {
    let runs: Vec<(&str, Vec<u8>)> = ["1", "1", "4", "0"]
        .into_iter()
        .map(|t| fuzz_bytes(t).map(|b| (t, b)))
        .collect::<Result<_, _>>()?;
    let first = &runs[0].1;
    let identical = runs.iter().all(|(_, b)| b == first);
    check(
        identical,
        format!(
            "fuzz --seed 42 --trials 2000 under UR_THREADS = 1, 1, 4, 0: {} reports of {} bytes, {}",
            runs.len(),
            first.len(),
            if identical { "byte-identical" } else { "differing" }
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("inequality fuzz suite", inequality_fuzz),
        ("Pauli equality battery", pauli_battery),
        ("block commutator battery", block_battery),
        ("non-PSD Gram example", gram_example),
        ("square-order counterexample search", counterexample),
        ("pinching identity and concavity step", pinching),
        ("structural invariants", structural),
        ("determinism across thread counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
