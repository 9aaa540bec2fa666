//! JSON wire format for matrices and problem files.
//!
//! Complex numbers are `[re, im]` pairs; matrices are
//! `{"rows", "cols", "data"}` with `data` row-major.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use ur_core::{DensityState, Matrix, Observable, ObservableTuple};

use crate::error::{CliError, CliResult};

pub type WireComplex = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<WireComplex>,
}

impl From<&Matrix> for WireMatrix {
    fn from(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl WireMatrix {
    pub fn to_matrix(&self) -> ur_core::Result<Matrix> {
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireState {
    Matrix(WireMatrix),
    Pure { pure: Vec<WireComplex> },
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: usize,
    pub observables: Vec<WireMatrix>,
    pub state: WireState,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub state: DensityState,
    pub tuple: ObservableTuple,
}

impl ProblemFile {
    /// Stores the state as an explicit density matrix.
    pub fn from_problem(state: &DensityState, tuple: &ObservableTuple) -> Self {
        Self {
            dim: state.dim(),
            observables: tuple.matrices().map(WireMatrix::from).collect(),
            state: WireState::Matrix(state.matrix().into()),
        }
    }

    pub fn validate(&self) -> CliResult<Problem> {
        let dim = self.dim;
        let check_dim = |context: String, m: &Matrix| {
            if m.shape() != (dim, dim) {
                return Err(CliError::validation(
                    context,
                    ur_core::Error::DimensionMismatch {
                        expected: dim,
                        found: if m.rows() != dim { m.rows() } else { m.cols() },
                    },
                ));
            }
            Ok(())
        };
        if self.observables.is_empty() {
            return Err(CliError::validation(
                "observables",
                ur_core::Error::TooFewObservables { needed: 1, found: 0 },
            ));
        }
        let mut ms = Vec::with_capacity(self.observables.len());
        for (i, w) in self.observables.iter().enumerate() {
            let context = format!("observables[{i}]");
            let m = w
                .to_matrix()
                .map_err(|e| CliError::validation(context.clone(), e))?;
            check_dim(context.clone(), &m)?;
            ms.push(Observable::new(m).map_err(|e| CliError::validation(context, e))?);
        }
        let tuple = ObservableTuple::new(ms).map_err(|e| CliError::validation("observables", e))?;

        let state = match &self.state {
            WireState::Matrix(w) => {
                let m = w.to_matrix().map_err(|e| CliError::validation("state", e))?;
                check_dim("state".into(), &m)?;
                DensityState::new(m)
            }
            WireState::Pure { pure } => {
                if pure.len() != dim {
                    return Err(CliError::validation(
                        "state.pure",
                        ur_core::Error::DimensionMismatch {
                            expected: dim,
                            found: pure.len(),
                        },
                    ));
                }
                let psi: Vec<Complex64> = pure.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                DensityState::pure(&psi)
            }
            WireState::Named(name) if name == "maximally_mixed" => {
                if dim == 0 {
                    Err(ur_core::Error::InvalidState("dimension must be positive".into()))
                } else {
                    Ok(DensityState::maximally_mixed(dim))
                }
            }
            WireState::Named(name) => Err(ur_core::Error::InvalidState(format!(
                "unknown named state '{name}' (expected \"maximally_mixed\")"
            ))),
        }
        .map_err(|e| CliError::validation("state", e))?;
        Ok(Problem { state, tuple })
    }
}

/// Parses and validates a problem from JSON text.
pub fn parse_problem(source_name: &str, text: &str) -> CliResult<Problem> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| CliError::parse(source_name, e))?;
    file.validate()
}

pub fn load_problem(path: &Path) -> CliResult<Problem> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_problem(&path.display().to_string(), &text)
}

pub fn save_problem(path: &Path, state: &DensityState, tuple: &ObservableTuple) -> CliResult<()> {
    write_json(path, &ProblemFile::from_problem(state, tuple))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    std::fs::write(path, to_json(value)).map_err(|e| CliError::io(path, e))
}
