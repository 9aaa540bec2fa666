mod common;

use common::{instance, rng};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use ur_core::linalg::{det, eigvalsh, is_psd, tol::PSD_TOL};
use ur_core::quantum::{anticommutator, center, commutator, expectation, moment_matrices};
use ur_core::sampling::random_hermitian;
use ur_core::StateKind;

fn kind() -> impl Strategy<Value = StateKind> {
    prop::sample::select(StateKind::ALL.to_vec())
}

proptest! {
    #[test]
    fn moment_structure(dim in 2usize..=6, n in 2usize..=5, k in kind(), seed in any::<u64>()) {
        let (rho, t) = instance(dim, n, k, seed);
        let m = moment_matrices(&rho, &t).unwrap();
        prop_assert!(m.centered);
        prop_assert!(is_psd(&m.gram, PSD_TOL).unwrap());
        prop_assert!(is_psd(&m.covariance, PSD_TOL).unwrap());
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(m.gram[(j, i)], m.gram[(i, j)].conj());
                prop_assert_eq!(m.covariance[(i, j)].im, 0.0);
                prop_assert_eq!(m.covariance[(i, j)], m.covariance[(j, i)]);
                // i(M - Mᵀ) is real skew-symmetric.
                let s = m.commutator[(i, j)] * Complex64::i();
                prop_assert_eq!(s.im, 0.0);
                prop_assert_eq!(s.re, -(m.commutator[(j, i)] * Complex64::i()).re);
            }
        }
    }

    #[test]
    fn moments_match_direct_products(dim in 2usize..=5, n in 2usize..=4, k in kind(), seed in any::<u64>()) {
        let (rho, t) = instance(dim, n, k, seed);
        let m = moment_matrices(&rho, &t).unwrap();
        let c = center(&rho, &t).unwrap();
        let xs: Vec<_> = c.matrices().collect();
        let scale = m.gram.max_abs().max(1.0);
        for i in 0..n {
            for j in 0..n {
                let anti = expectation(&rho, &anticommutator(xs[i], xs[j]).unwrap()).unwrap() * 0.5;
                let comm = expectation(&rho, &commutator(xs[i], xs[j]).unwrap()).unwrap() * 0.5;
                prop_assert!((anti - m.covariance[(i, j)]).norm() < 1e-12 * scale);
                prop_assert!((comm - m.commutator[(i, j)]).norm() < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn centering_zeroes_means(dim in 2usize..=6, n in 1usize..=5, k in kind(), seed in any::<u64>()) {
        let (rho, t) = instance(dim, n, k, seed);
        let c = center(&rho, &t).unwrap();
        for x in c.matrices() {
            prop_assert!(expectation(&rho, x).unwrap().norm() <= 1e-12 * x.max_abs().max(1.0));
        }
        let m = moment_matrices(&rho, &c).unwrap();
        prop_assert!(!m.centered);
    }

    #[test]
    fn variance_sum_is_covariance_trace(dim in 2usize..=6, n in 1usize..=5, k in kind(), seed in any::<u64>()) {
        let (rho, t) = instance(dim, n, k, seed);
        let m = moment_matrices(&rho, &t).unwrap();
        let v = m.variances();
        prop_assert!(v.iter().all(|&x| x >= 0.0));
        prop_assert_eq!(v.iter().sum::<f64>(), m.covariance.real_diagonal().iter().sum::<f64>());
    }

    #[test]
    fn odd_commutator_determinant_vanishes(dim in 2usize..=6, n in prop::sample::select(vec![1usize, 3, 5]), k in kind(), seed in any::<u64>()) {
        let (rho, t) = instance(dim, n, k, seed);
        let m = moment_matrices(&rho, &t).unwrap();
        let d = det(&m.commutator).unwrap().norm();
        let scale = eigvalsh(&m.commutator).unwrap().iter().map(|l| l.abs()).fold(1.0, f64::max).powi(n as i32);
        prop_assert!(d < 1e-9 * scale, "det {d}");
    }
}

#[test]
fn random_hermitian_eigenvalues_average_to_zero() {
    let mut r = rng(77);
    let mut sum = 0.0;
    let mut count = 0;
    for _ in 0..1000 {
        for l in eigvalsh(&random_hermitian(4, &mut r)).unwrap() {
            sum += l;
            count += 1;
        }
    }
    let mean = sum / count as f64;
    assert!(mean.abs() < 0.1, "mean {mean}");
}

#[test]
fn state_kinds_are_states() {
    let mut r = rng(3);
    for _ in 0..50 {
        let d = r.random_range(1..=6);
        for k in StateKind::ALL {
            let (rho, _) = instance(d, 1, k, r.random());
            assert!(is_psd(rho.matrix(), PSD_TOL).unwrap());
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
    }
}
