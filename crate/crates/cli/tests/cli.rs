use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use serde_json::Value;
use ur_cli::campaign::{draw_instance, run_campaign, scaled_margin, CampaignConfig};
use ur_cli::report::evaluate_problem;
use ur_cli::{load_problem, parse_problem, save_problem, CliError};
use ur_core::relations::evaluate;
use ur_core::{DensityState, Matrix, ObservableTuple, RelationId, StateKind};

fn ur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ur"))
        .args(args)
        .env("UR_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn pauli_pair() -> ObservableTuple {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let sx = Matrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
    let sy = Matrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]);
    ObservableTuple::from_matrices(vec![sx, sy]).unwrap()
}

fn small_config(trials: u64) -> CampaignConfig {
    CampaignConfig {
        dims: vec![2, 3, 4],
        num_observables: vec![2, 3],
        trials,
        seed: 11,
        relations: RelationId::ALL.to_vec(),
        tol: 1e-9,
        state_kinds: StateKind::ALL.to_vec(),
    }
}

#[test]
fn problem_file_round_trip_is_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(20);
    for trial in 0..config.trials {
        let inst = draw_instance(&config, trial);
        let path = dir.path().join(format!("p{trial}.json"));
        save_problem(&path, &inst.state, &inst.tuple).unwrap();
        let back = load_problem(&path).unwrap();
        assert_eq!(back.state.matrix(), inst.state.matrix());
        for (a, b) in back.tuple.matrices().zip(inst.tuple.matrices()) {
            assert_eq!(a, b);
        }
    }
}

#[test]
fn malformed_json_is_a_parse_error() {
    for text in ["", "{", "{\"dim\": 2,\n \"observables\": [1, 2", "[]", "{\"dim\": \"two\"}"] {
        let e = parse_problem("bad.json", text).unwrap_err();
        assert!(matches!(e, CliError::Parse { .. }), "{text:?}: {e}");
        assert!(e.to_string().starts_with("bad.json:"), "{e}");
    }
}

#[test]
fn maximally_mixed_pauli_pair_has_zero_lhs() {
    let text = r#"{
        "dim": 2,
        "observables": [
            {"rows": 2, "cols": 2, "data": [[0,0],[1,0],[1,0],[0,0]]},
            {"rows": 2, "cols": 2, "data": [[0,0],[0,-1],[0,1],[0,0]]}
        ],
        "state": "maximally_mixed"
    }"#;
    let p = parse_problem("inline", text).unwrap();
    let report = evaluate_problem(&p, &[RelationId::SchrodingerHeisenberg], 1e-9).unwrap();
    let sh = &report.relations["schrodinger_heisenberg"].reports[0];
    assert_eq!(sh.lhs, 0.0);
    assert_eq!(sh.rhs, 1.0);
    assert!(sh.satisfied);
}

#[test]
fn eval_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let ket0 = DensityState::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
    save_problem(&good, &ket0, &pauli_pair()).unwrap();
    let out_path = dir.path().join("report.json");

    let out = ur(&["eval", "--input", path_str(&good), "--output", path_str(&out_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["relations"].as_object().unwrap().len(), RelationId::ALL.len());
    assert_eq!(report["relations"]["robertson_sup"]["reports"][0]["lhs"], 1.0);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = ur(&["eval", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.json:1:"));

    let out = ur(&["eval", "--input", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let out = ur(&["eval", "--input", path_str(&good), "--relations", "robertson_sup,nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
}

#[test]
fn fuzz_exit_codes() {
    let out = ur(&["fuzz", "--trials", "50", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["trials"], 50);

    // With zero tolerance, rounding in equality cases shows up as violations.
    let out = ur(&["fuzz", "--trials", "300", "--seed", "3", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = ur(&["fuzz", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ur(&["fuzz", "--dims", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ur(&["fuzz", "--state", "thermal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fuzz_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("t.csv");
    let out = ur(&[
        "fuzz", "--trials", "20", "--relations", "robertson_sup,row_sum_bound",
        "--output", path_str(&json), "--csv", path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("tightness"));
    assert_eq!(lines.count(), 40);
}

#[test]
fn demo_cases() {
    for case in ["gram-example", "pauli-equalities", "square-order-counterexample", "pinching-identity"] {
        let out = ur(&["demo", "--case", case]);
        assert_eq!(out.status.code(), Some(0), "{case}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty());
    }
    let out = ur(&["demo", "--case", "gram-example"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("det G = -0.75"));

    let out = ur(&["demo", "--case", "nonexistent"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonexistent"));
}

#[test]
fn version() {
    let out = ur(&["version"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ur 0.1.0");
}

#[test]
fn worst_witnesses_replay() {
    let result = run_campaign(&small_config(300)).unwrap();
    let report: Value = serde_json::from_str(&result.to_json()).unwrap();
    for (name, stats) in report["relations"].as_object().unwrap() {
        let w = &stats["worstWitness"];
        assert!(w.is_object(), "{name} has no witness");
        let problem = parse_problem(name, &w["instance"].to_string()).unwrap();
        let relation: RelationId = name.parse().unwrap();
        let ev = evaluate(relation, &problem.state, &problem.tuple, 1e-9).unwrap();
        let r = match w.get("label") {
            Some(label) => ev
                .reports
                .iter()
                .find(|r| r.label.as_deref() == label.as_str())
                .unwrap_or_else(|| panic!("{name}: no report labelled {label}")),
            None => &ev.reports[0],
        };
        let close = |a: f64, b: &Value| {
            let b = b.as_f64().unwrap();
            (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
        };
        assert!(close(r.lhs, &w["lhs"]), "{name}: lhs {} vs {}", r.lhs, w["lhs"]);
        assert!(close(r.rhs, &w["rhs"]), "{name}: rhs {} vs {}", r.rhs, w["rhs"]);
        let m = scaled_margin(w["lhs"].as_f64().unwrap(), w["rhs"].as_f64().unwrap());
        assert_eq!(Some(m), stats["minMargin"].as_f64(), "{name}");
    }
}

#[test]
fn pure_qubit_pairs_saturate_robertson() {
    let config = CampaignConfig {
        dims: vec![2],
        num_observables: vec![2],
        trials: 200,
        seed: 9,
        relations: vec![RelationId::RobertsonSup],
        tol: 1e-9,
        state_kinds: vec![StateKind::Pure],
    };
    let result = run_campaign(&config).unwrap();
    let stats = &result.relations[&RelationId::RobertsonSup];
    assert_eq!(stats.violations, 0);
    assert!(stats.max_tightness.unwrap() >= 0.999, "{:?}", stats.max_tightness);
}
