//! Serializable views of relation reports and the `eval` output.

use std::collections::BTreeMap;

use serde::Serialize;
use ur_core::relations::{evaluate_all, Evaluation};
use ur_core::{BoundReport, RelationId, Witness};

use crate::error::{CliError, CliResult};
use crate::wire::{Problem, WireMatrix};

pub const REPORT_VERSION: &str = "1";

/// JSON has no infinities or NaN; those become `null`.
pub(crate) fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WireWitness {
    Unitary { matrix: WireMatrix },
    Eigenvalues { values: Vec<f64> },
    Diagonals { lhs: Vec<f64>, rhs: Vec<f64> },
    Gap { min_eigenvalue: f64, scale: f64 },
    Note { text: String },
}

impl From<&Witness> for WireWitness {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Unitary(u) => WireWitness::Unitary { matrix: u.into() },
            Witness::Eigenvalues(v) => WireWitness::Eigenvalues { values: v.clone() },
            Witness::Diagonals { lhs, rhs } => WireWitness::Diagonals {
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            },
            Witness::Gap {
                min_eigenvalue,
                scale,
            } => WireWitness::Gap {
                min_eigenvalue: *min_eigenvalue,
                scale: *scale,
            },
            Witness::Note(s) => WireWitness::Note { text: s.clone() },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WireReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub degenerate: bool,
    pub tightness: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<WireWitness>,
}

impl From<&BoundReport> for WireReport {
    fn from(r: &BoundReport) -> Self {
        Self {
            label: r.label.clone(),
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            satisfied: r.satisfied,
            degenerate: r.degenerate,
            tightness: r.resolved_tightness().and_then(finite),
            witness: r.witness.iter().map(WireWitness::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationEval {
    pub satisfied: bool,
    pub reports: Vec<WireReport>,
}

impl From<&Evaluation> for RelationEval {
    fn from(e: &Evaluation) -> Self {
        Self {
            satisfied: e.satisfied(),
            reports: e.reports.iter().map(WireReport::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub dim: usize,
    #[serde(rename = "numObservables")]
    pub num_observables: usize,
    pub tol: f64,
    pub relations: BTreeMap<String, RelationEval>,
    pub version: &'static str,
}

impl EvalReport {
    pub fn violations(&self) -> usize {
        self.relations
            .values()
            .flat_map(|r| &r.reports)
            .filter(|r| !r.satisfied)
            .count()
    }
}

/// Evaluates `relations` on a problem. Any evaluator error is an input
/// error for the whole run.
pub fn evaluate_problem(problem: &Problem, relations: &[RelationId], tol: f64) -> CliResult<EvalReport> {
    let mut out = BTreeMap::new();
    for (r, ev) in evaluate_all(relations, &problem.state, &problem.tuple, tol) {
        let ev = ev.map_err(|e| CliError::validation(r.as_str(), e))?;
        out.insert(r.as_str().to_string(), RelationEval::from(&ev));
    }
    Ok(EvalReport {
        dim: problem.state.dim(),
        num_observables: problem.tuple.len(),
        tol,
        relations: out,
        version: REPORT_VERSION,
    })
}

/// One line per report: verdict, relation, label, lhs, rhs.
pub fn format_eval(report: &EvalReport) -> String {
    let mut s = String::new();
    for (name, ev) in &report.relations {
        for r in &ev.reports {
            let verdict = if r.satisfied { "ok  " } else { "FAIL" };
            let name = match &r.label {
                Some(l) => format!("{name} [{l}]"),
                None => name.clone(),
            };
            let degenerate = if r.degenerate { " (degenerate)" } else { "" };
            s.push_str(&format!(
                "{verdict} {name:<60} lhs = {:<24e} rhs = {:e}{degenerate}\n",
                r.lhs, r.rhs
            ));
        }
    }
    s
}
