use std::fmt;
use std::str::FromStr;

use crate::linalg::Matrix;

/// Default verdict tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Every relation the crate can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    DetSumDifference,
    RobertsonSup,
    SchrodingerHeisenberg,
    GeometricMeanMajorization,
    NormBound,
    FrobeniusChain,
    DiagonalProductBound,
    VarianceProductBound,
    VarianceMeanBound,
    RowSumBound,
    BlockCommutatorTraceBound,
    TwoObservableTraceBound,
    PinchingTraceStep,
}

impl RelationId {
    pub const ALL: [RelationId; 13] = [
        RelationId::DetSumDifference,
        RelationId::RobertsonSup,
        RelationId::SchrodingerHeisenberg,
        RelationId::GeometricMeanMajorization,
        RelationId::NormBound,
        RelationId::FrobeniusChain,
        RelationId::DiagonalProductBound,
        RelationId::VarianceProductBound,
        RelationId::VarianceMeanBound,
        RelationId::RowSumBound,
        RelationId::BlockCommutatorTraceBound,
        RelationId::TwoObservableTraceBound,
        RelationId::PinchingTraceStep,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationId::DetSumDifference => "det_sum_difference",
            RelationId::RobertsonSup => "robertson_sup",
            RelationId::SchrodingerHeisenberg => "schrodinger_heisenberg",
            RelationId::GeometricMeanMajorization => "geometric_mean_majorization",
            RelationId::NormBound => "norm_bound",
            RelationId::FrobeniusChain => "frobenius_chain",
            RelationId::DiagonalProductBound => "diagonal_product_bound",
            RelationId::VarianceProductBound => "variance_product_bound",
            RelationId::VarianceMeanBound => "variance_mean_bound",
            RelationId::RowSumBound => "row_sum_bound",
            RelationId::BlockCommutatorTraceBound => "block_commutator_trace_bound",
            RelationId::TwoObservableTraceBound => "two_observable_trace_bound",
            RelationId::PinchingTraceStep => "pinching_trace_step",
        }
    }

    /// Minimum number of observables the relation needs.
    pub fn min_observables(self) -> usize {
        match self {
            RelationId::SchrodingerHeisenberg
            | RelationId::VarianceProductBound
            | RelationId::RowSumBound
            | RelationId::BlockCommutatorTraceBound
            | RelationId::TwoObservableTraceBound
            | RelationId::PinchingTraceStep => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownRelation(pub String);

impl fmt::Display for UnknownRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown relation '{}'", self.0)
    }
}

impl std::error::Error for UnknownRelation {}

impl FromStr for RelationId {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| UnknownRelation(s.to_string()))
    }
}

/// Structured supporting data attached to a report.
#[derive(Clone, Debug)]
pub enum Witness {
    /// The unitary `U = sign(A - B)`.
    Unitary(Matrix),
    Eigenvalues(Vec<f64>),
    /// Per-coordinate diagonal factors of a product bound.
    Diagonals { lhs: Vec<f64>, rhs: Vec<f64> },
    /// Minimum eigenvalue of a Loewner-order gap and the scale it was
    /// normalized by.
    Gap { min_eigenvalue: f64, scale: f64 },
    Note(String),
}

/// Evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub relation: RelationId,
    /// Distinguishes several reports of one relation, e.g. `ky_fan_2`.
    pub label: Option<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub tol: f64,
    /// Analytically zero left side that was not compared numerically.
    pub degenerate: bool,
    pub witness: Vec<Witness>,
}

/// `lhs <= rhs + tol * max(1, |rhs|)`.
pub fn within_tolerance(lhs: f64, rhs: f64, tol: f64) -> bool {
    lhs <= rhs + tol * rhs.abs().max(1.0)
}

impl BoundReport {
    pub fn new(relation: RelationId, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            relation,
            label: None,
            lhs,
            rhs,
            margin: rhs - lhs,
            satisfied: within_tolerance(lhs, rhs, tol),
            tol,
            degenerate: false,
            witness: Vec::new(),
        }
    }

    /// A report whose left side vanishes analytically.
    pub fn degenerate(relation: RelationId, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            satisfied: true,
            degenerate: true,
            ..Self::new(relation, lhs, rhs, tol)
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness.push(w);
        self
    }

    /// `lhs / rhs`; 0 when both vanish.
    pub fn tightness(&self) -> f64 {
        ratio(self.lhs, self.rhs)
    }

    /// `lhs / rhs` when `rhs` is resolved, i.e. `rhs > tol * max(1, |rhs|)`;
    /// below that the verdict cannot tell the two sides apart and the ratio
    /// is rounding noise.
    pub fn resolved_tightness(&self) -> Option<f64> {
        (self.rhs > self.tol * self.rhs.abs().max(1.0)).then(|| self.lhs / self.rhs)
    }
}

pub(crate) fn ratio(lhs: f64, rhs: f64) -> f64 {
    if rhs.abs() < f64::MIN_POSITIVE {
        if lhs.abs() < f64::MIN_POSITIVE {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    }
}

/// Nondecreasing sequence of named values.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub relation: RelationId,
    pub values: Vec<(String, f64)>,
    pub satisfied: bool,
    pub tol: f64,
}

impl ChainReport {
    pub fn new(relation: RelationId, values: Vec<(String, f64)>, tol: f64) -> Self {
        let satisfied = values
            .windows(2)
            .all(|w| within_tolerance(w[0].1, w[1].1, tol));
        Self {
            relation,
            values,
            satisfied,
            tol,
        }
    }

    pub fn numbers(&self) -> Vec<f64> {
        self.values.iter().map(|(_, v)| *v).collect()
    }

    /// Each consecutive pair as a bound report.
    pub fn links(&self) -> Vec<BoundReport> {
        self.values
            .windows(2)
            .map(|w| {
                BoundReport::new(self.relation, w[0].1, w[1].1, self.tol)
                    .with_label(format!("{} <= {}", w[0].0, w[1].0))
            })
            .collect()
    }
}
