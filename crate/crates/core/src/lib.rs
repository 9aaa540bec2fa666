//! Numerical verification of matrix uncertainty relations for tuples of
//! Hermitian observables under density-matrix states.

pub mod error;
pub mod linalg;
pub mod quantum;
pub mod relations;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{ComplexScalar, EigenDecomposition, Matrix};
pub use quantum::{DensityState, MomentMatrices, Observable, ObservableTuple};
pub use relations::{BoundReport, ChainReport, RelationId, Witness};
pub use sampling::StateKind;
