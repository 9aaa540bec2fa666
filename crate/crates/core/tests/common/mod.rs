#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ur_core::sampling::{random_density, random_hermitian, random_wishart};
use ur_core::{DensityState, Matrix, ObservableTuple, StateKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn psd(dim: usize, seed: u64) -> Matrix {
    random_wishart(dim, dim, &mut rng(seed))
}

/// Rank-deficient PSD matrix of the given rank.
pub fn psd_rank(dim: usize, rank: usize, seed: u64) -> Matrix {
    random_wishart(dim, rank, &mut rng(seed))
}

pub fn hermitian(dim: usize, seed: u64) -> Matrix {
    random_hermitian(dim, &mut rng(seed))
}

pub fn instance(dim: usize, n: usize, kind: StateKind, seed: u64) -> (DensityState, ObservableTuple) {
    let mut r = rng(seed);
    let rho = random_density(dim, &mut r, kind);
    let tuple =
        ObservableTuple::from_matrices((0..n).map(|_| random_hermitian(dim, &mut r)).collect())
            .unwrap();
    (rho, tuple)
}

pub fn min_eig(a: &Matrix) -> f64 {
    ur_core::linalg::min_eigenvalue(a).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
