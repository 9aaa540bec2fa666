//! Random test instances: Hermitian matrices, density states, unitaries.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{jacobi, Matrix};
use crate::quantum::DensityState;

/// Standard complex Gaussian: independent real and imaginary parts with
/// variance 1/2 each, so `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// `(G + G*) / 2` with `G` Ginibre.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    ginibre(dim, dim, rng).hermitian_part()
}

/// `G G*` with `G` a `dim x rank` Ginibre matrix.
pub fn random_wishart<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Matrix {
    let g = ginibre(dim, rank, rng);
    (&g * &g.adjoint()).hermitian_part()
}

/// Eigenvector matrix of a random Hermitian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    jacobi(&random_hermitian(dim, rng), true).eigenvectors
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateKind {
    /// Rank one.
    Pure,
    /// `G G* / tr(G G*)` with square `G`.
    MixedFullRank,
    /// Like `MixedFullRank` with `G` of uniformly random width `1..=dim`.
    MixedRandomRank,
}

impl StateKind {
    pub const ALL: [StateKind; 3] = [
        StateKind::Pure,
        StateKind::MixedFullRank,
        StateKind::MixedRandomRank,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Pure => "pure",
            StateKind::MixedFullRank => "mixed-full-rank",
            StateKind::MixedRandomRank => "mixed-random-rank",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        StateKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown state kind '{s}' (expected pure, mixed-full-rank or mixed-random-rank)"))
    }
}

pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R, kind: StateKind) -> DensityState {
    match kind {
        StateKind::Pure => {
            let psi: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
            DensityState::pure(&psi).expect("Gaussian vector is nonzero")
        }
        StateKind::MixedFullRank | StateKind::MixedRandomRank => {
            let rank = if kind == StateKind::MixedFullRank {
                dim
            } else {
                rng.random_range(1..=dim)
            };
            let w = random_wishart(dim, rank, rng);
            let tr = w.trace().re;
            DensityState::new(w.scale_real(1.0 / tr)).expect("normalized Wishart matrix is a state")
        }
    }
}
