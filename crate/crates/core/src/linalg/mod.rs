//! Dense complex linear algebra and Hermitian spectral calculus.

mod det;
mod eigen;
mod functions;
mod matrix;
mod mean;
mod norms;
mod structure;
pub mod tol;

pub use det::det;
pub use eigen::{eigh, eigvalsh, EigenDecomposition};
pub use functions::{
    abs_matrix, is_psd, matrix_power, matrix_sqrt, min_eigenvalue, pd_inverse, polar_hermitian,
    HermitianPolar,
};
pub use matrix::{ComplexScalar, Matrix};
pub use mean::{geodesic, geometric_mean, maximality_probe, riemannian_inner, GeometricMean, MaximalityProbe};
pub use norms::{
    frobenius_norm, ky_fan_norm, ky_fan_norms, operator_norm, schatten_from_singular_values,
    schatten_norm, singular_values, trace_norm,
};
pub use structure::{
    block_matrix, fourier_block_average, kron, kron_power, pinch_block_diagonal, BlockStructure,
};

pub(crate) use det::hermitian_det;
pub(crate) use eigen::jacobi;
pub(crate) use functions::hermitian_trace_norm;
