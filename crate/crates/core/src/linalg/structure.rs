//! Kronecker products, block assembly and pinching.

use num_complex::Complex64;

use super::matrix::{Matrix, ONE};
use crate::error::{Error, Result};

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    Matrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `a ⊗ a ⊗ ... ⊗ a` with `power` factors; `power = 0` gives `[1]`.
pub fn kron_power(a: &Matrix, power: usize) -> Matrix {
    let mut out = Matrix::identity(1);
    for _ in 0..power {
        out = kron(&out, a);
    }
    out
}

/// Assembles a `k x k` grid of equally sized square blocks.
pub fn block_matrix(blocks: &[Vec<Matrix>]) -> Result<Matrix> {
    let k = blocks.len();
    if k == 0 {
        return Err(Error::BlockMismatch("empty block grid".into()));
    }
    let d = blocks[0]
        .first()
        .ok_or_else(|| Error::BlockMismatch("empty block row".into()))?
        .rows();
    for (i, row) in blocks.iter().enumerate() {
        if row.len() != k {
            return Err(Error::BlockMismatch(format!(
                "block row {i} has {} blocks, expected {k}",
                row.len()
            )));
        }
        for (j, b) in row.iter().enumerate() {
            if b.shape() != (d, d) {
                return Err(Error::BlockMismatch(format!(
                    "block ({i}, {j}) is {}x{}, expected {d}x{d}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
    }
    Ok(block_matrix_rect(blocks))
}

/// Assembles blocks whose row heights and column widths are consistent.
/// Panics otherwise.
pub(crate) fn block_matrix_rect(blocks: &[Vec<Matrix>]) -> Matrix {
    let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows()).collect();
    let widths: Vec<usize> = blocks[0].iter().map(Matrix::cols).collect();
    let mut out = Matrix::zeros(heights.iter().sum(), widths.iter().sum());
    let mut r0 = 0;
    for (row, &h) in blocks.iter().zip(&heights) {
        let mut c0 = 0;
        for (b, &w) in row.iter().zip(&widths) {
            assert_eq!(b.shape(), (h, w), "inconsistent block shapes");
            out.set_block(r0, c0, b);
            c0 += w;
        }
        r0 += h;
    }
    out
}

/// Partition of a dimension into consecutive diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure(Vec<usize>);

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::BlockMismatch(
                "block sizes must be positive and nonempty".into(),
            ));
        }
        Ok(Self(sizes))
    }

    /// `count` blocks of size `size`.
    pub fn uniform(count: usize, size: usize) -> Result<Self> {
        Self::new(vec![size; count])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn num_blocks(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().sum()
    }

    /// Block index of each coordinate.
    pub fn labels(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect()
    }

    fn check(&self, a: &Matrix) -> Result<()> {
        let n = a.square_dim()?;
        if n != self.dim() {
            return Err(Error::BlockMismatch(format!(
                "matrix dimension {n} but blocks sum to {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// Keeps the diagonal blocks of `a` and zeroes everything else.
pub fn pinch_block_diagonal(a: &Matrix, blocks: &BlockStructure) -> Result<Matrix> {
    blocks.check(a)?;
    let labels = blocks.labels();
    Ok(Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        if labels[i] == labels[j] {
            a[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// `(1/k) Σ_m U_m A U_m*` with `U_m = blockdiag(ω^{jm} I)` and
/// `ω = exp(2πi/k)`, `k` the number of blocks.
///
/// Each conjugation multiplies block `(i, j)` by `ω^{(i-j)m}`; the sum over
/// `m` vanishes unless `i = j`, so this equals the pinching exactly.
pub fn fourier_block_average(a: &Matrix, blocks: &BlockStructure) -> Result<Matrix> {
    blocks.check(a)?;
    let k = blocks.num_blocks();
    let labels = blocks.labels();
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    for m in 0..k {
        let phase: Vec<Complex64> = labels
            .iter()
            .map(|&b| root_of_unity(k, b * m))
            .collect();
        for i in 0..n {
            for j in 0..n {
                acc[(i, j)] += phase[i] * a[(i, j)] * phase[j].conj();
            }
        }
    }
    Ok(acc.scale_real(1.0 / k as f64))
}

/// `exp(2πi·e/k)`, exact for multiples of a quarter turn.
pub(crate) fn root_of_unity(k: usize, e: usize) -> Complex64 {
    let e = e % k;
    if e == 0 {
        return ONE;
    }
    if (4 * e).is_multiple_of(k) {
        return match 4 * e / k {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / k as f64)
}
