//! Dense real square matrices.
//!
//! Everything here is sized for desk-scale problems (a handful to a few
//! dozen rows), so storage is a flat row-major `Vec<f64>`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Dense `n x n` real matrix with finite entries, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data of length `n * n`.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n + 1,
                col: pos % n + 1,
            });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a slice of rows; every row must have `rows.len()` entries.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Dimension.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn diag(&self, i: usize) -> f64 {
        self.data[i * self.n + i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    /// Principal submatrix on the given (sorted, distinct) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Matrix {
        let k = idx.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                data.push(self[(i, j)]);
            }
        }
        Matrix { n: k, data }
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Entrywise `self - other`.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Entrywise `self + other`.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, c: f64) -> Matrix {
        self.map(|v| c * v)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// True when every off-diagonal entry is `<= 0`.
    pub fn is_z_matrix(&self) -> bool {
        (0..self.n).all(|i| {
            self.row(i)
                .iter()
                .enumerate()
                .all(|(j, &v)| j == i || v <= 0.0)
        })
    }

    /// Absolute off-diagonal sum of row `i`.
    pub fn off_diag_abs_sum(&self, i: usize) -> f64 {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.abs())
            .sum()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Result of LU factorization with partial pivoting: `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    /// Unit lower triangular factor.
    pub lower: Matrix,
    pub upper: Matrix,
    /// `perm[k]` is the row of `A` that ends up in row `k` of `P A`.
    pub perm: Vec<usize>,
    /// Set when some pivot fell below `1e-14 * max|A|`.
    pub singular: bool,
    swaps: usize,
}

/// Relative pivot threshold below which a factorization is flagged singular.
pub const PIVOT_TOL: f64 = 1e-14;

/// LU factorization with partial (row) pivoting.
///
/// Never fails: a column whose best pivot is below `1e-14 * max|A|` sets
/// [`LuFactors::singular`] and is left uneliminated.
pub fn lu_factor(a: &Matrix) -> LuFactors {
    let n = a.n();
    let threshold = PIVOT_TOL * a.max_abs();
    let mut u = a.clone();
    let mut lower = Matrix::identity(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut singular = a.max_abs() == 0.0;
    let mut swaps = 0;

    for k in 0..n {
        let (p, pivot_abs) = (k..n)
            .map(|i| (i, u[(i, k)].abs()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs <= threshold {
            singular = true;
            continue;
        }
        if p != k {
            swaps += 1;
            perm.swap(p, k);
            for j in 0..n {
                let t = u[(k, j)];
                u[(k, j)] = u[(p, j)];
                u[(p, j)] = t;
            }
            for j in 0..k {
                let t = lower[(k, j)];
                lower[(k, j)] = lower[(p, j)];
                lower[(p, j)] = t;
            }
        }
        let pivot = u[(k, k)];
        for i in k + 1..n {
            let factor = u[(i, k)] / pivot;
            if factor == 0.0 {
                continue;
            }
            lower[(i, k)] = factor;
            u[(i, k)] = 0.0;
            for j in k + 1..n {
                u[(i, j)] -= factor * u[(k, j)];
            }
        }
    }

    LuFactors {
        lower,
        upper: u,
        perm,
        singular,
        swaps,
    }
}

impl LuFactors {
    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.perm.len();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        if self.singular {
            return Err(Error::SingularMatrix);
        }
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lower[(i, j)] * y[j]).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.upper[(i, j)] * y[j]).sum();
            y[i] = (y[i] - s) / self.upper[(i, i)];
        }
        Ok(y)
    }

    /// Determinant of the factored matrix (`0` when flagged singular).
    pub fn determinant(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let n = self.perm.len();
        let prod: f64 = (0..n).map(|i| self.upper[(i, i)]).product();
        if self.swaps.is_multiple_of(2) {
            prod
        } else {
            -prod
        }
    }
}

/// Inverse via LU; fails with [`Error::SingularMatrix`] when the
/// factorization is flagged singular.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let lu = lu_factor(a);
    if lu.singular {
        return Err(Error::SingularMatrix);
    }
    let n = a.n();
    let mut inv = Matrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        let col = lu.solve(&e)?;
        for (i, v) in col.into_iter().enumerate() {
            inv[(i, j)] = v;
        }
    }
    Ok(inv)
}

/// Maximum absolute row sum.
pub fn inf_norm(a: &Matrix) -> f64 {
    a.rows()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Infinity norm of a vector.
pub fn vec_inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
}

/// Comparison matrix: `|a_ii|` on the diagonal, `-|a_ij|` elsewhere.
pub fn comparison_matrix(a: &Matrix) -> Matrix {
    let n = a.n();
    let mut out = a.map(|v| -v.abs());
    for i in 0..n {
        out[(i, i)] = a.diag(i).abs();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert_eq!(
            Matrix::from_row_major(2, vec![1.0; 3]),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        );
        assert_eq!(
            Matrix::from_rows(&[&[1.0, f64::NAN][..], &[0.0, 1.0][..]]),
            Err(Error::NonFinite { row: 1, col: 2 })
        );
        assert_eq!(Matrix::from_row_major(0, vec![]), Err(Error::Empty));
    }

    #[test]
    fn lu_identity() {
        let lu = lu_factor(&Matrix::identity(3));
        assert_eq!(lu.lower, Matrix::identity(3));
        assert_eq!(lu.upper, Matrix::identity(3));
        assert_eq!(lu.perm, vec![0, 1, 2]);
        assert!(!lu.singular);
    }

    #[test]
    fn lu_swaps_rows_of_permutation_matrix() {
        let lu = lu_factor(&m(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert_eq!(lu.perm, vec![1, 0]);
        assert_eq!(lu.upper[(0, 0)], 1.0);
        assert_eq!(lu.upper[(1, 1)], 1.0);
        assert!(!lu.singular);
        assert_eq!(lu.determinant(), -1.0);
    }

    #[test]
    fn lu_flags_rank_one() {
        let lu = lu_factor(&m(&[&[1.0, 1.0], &[1.0, 1.0]]));
        assert!(lu.singular);
        assert_eq!(lu.determinant(), 0.0);
        assert_eq!(
            inverse(&m(&[&[1.0, 1.0], &[1.0, 1.0]])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&Matrix::identity(4)).unwrap(), Matrix::identity(4));
        assert_eq!(
            inverse(&m(&[&[2.0, 0.0], &[0.0, 4.0]])).unwrap(),
            m(&[&[0.5, 0.0], &[0.0, 0.25]])
        );
        assert_eq!(
            inverse(&m(&[&[1.0, 1.0], &[0.0, 1.0]])).unwrap(),
            m(&[&[1.0, -1.0], &[0.0, 1.0]])
        );
    }

    #[test]
    fn inf_norm_examples() {
        assert_eq!(inf_norm(&m(&[&[1.0, -2.0], &[3.0, 4.0]])), 7.0);
        assert_eq!(inf_norm(&Matrix::identity(5)), 1.0);
        assert_eq!(inf_norm(&Matrix::zeros(3)), 0.0);
    }

    #[test]
    fn comparison_matrix_examples() {
        let a = m(&[&[2.0, -1.0], &[-1.0, 2.0]]);
        assert_eq!(comparison_matrix(&a), a);
        assert_eq!(comparison_matrix(&m(&[&[-2.0, 1.0], &[1.0, -2.0]])), a);
        assert_eq!(comparison_matrix(&Matrix::identity(3)), Matrix::identity(3));
    }

    fn shifted_random() -> impl Strategy<Value = Matrix> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |mut data| {
                for i in 0..n {
                    data[i * n + i] += 2.0 * n as f64;
                }
                Matrix::from_row_major(n, data).unwrap()
            })
        })
    }

    fn square_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(-5.0f64..5.0, n * n)
                .prop_map(move |data| Matrix::from_row_major(n, data).unwrap())
        })
    }

    proptest! {
        #[test]
        fn inverse_times_a_is_identity(a in shifted_random()) {
            let inv = inverse(&a).unwrap();
            let r = inv.mul(&a).unwrap().sub(&Matrix::identity(a.n())).unwrap();
            prop_assert!(inf_norm(&r) < 1e-8);
        }

        #[test]
        fn lu_reconstructs(a in shifted_random()) {
            let lu = lu_factor(&a);
            let n = a.n();
            let lu_prod = lu.lower.mul(&lu.upper).unwrap();
            let mut err = 0.0;
            let mut norm = 0.0;
            for (k, &p) in lu.perm.iter().enumerate() {
                for j in 0..n {
                    err += (lu_prod[(k, j)] - a[(p, j)]).powi(2);
                    norm += a[(p, j)].powi(2);
                }
            }
            prop_assert!(err.sqrt() <= 1e-10 * norm.sqrt());
            let mut seen = lu.perm.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        }

        #[test]
        fn inf_norm_is_absolutely_homogeneous(a in square_matrix(), c in -10.0f64..10.0) {
            let lhs = inf_norm(&a.scale(c));
            let rhs = c.abs() * inf_norm(&a);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn comparison_matrix_fixes_z_matrices(a in square_matrix()) {
            let mut z = a.map(|v| -v.abs());
            for i in 0..z.n() {
                z[(i, i)] = a.diag(i).abs();
            }
            prop_assert_eq!(comparison_matrix(&z), z);
        }
    }
}
