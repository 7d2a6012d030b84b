use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{bit_length, BigRational};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type RatMatrix = DenseMatrix<BigRational>;

impl<T> DenseMatrix<T> {
    /// Panics if `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        DenseMatrix { rows, cols, entries }
    }

    /// Builds a matrix from equal-length rows. `cols` is taken from the first
    /// row, so an empty row list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let entries: Vec<T> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), cols, "ragged rows"))
            .flatten()
            .collect();
        DenseMatrix::new(n, cols, entries)
    }

    /// An empty matrix with a fixed column count, to be filled with [`push_row`](Self::push_row).
    pub fn with_cols(cols: usize) -> Self {
        DenseMatrix { rows: 0, cols, entries: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }
}

impl<T: Clone> DenseMatrix<T> {
    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)].clone());
            }
        }
        DenseMatrix::new(self.cols, self.rows, entries)
    }

    /// Submatrix with the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        DenseMatrix::new(rows.len(), cols.len(), entries)
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        self.iter_rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Pivot row for column `c` among `from..`: the nonzero entry of least bit length.
fn choose_pivot(rows: &[Vec<BigRational>], from: usize, c: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&i| !rows[i][c].is_zero())
        .min_by_key(|&i| bit_length(&rows[i][c]))
}

/// Gauss-Jordan elimination in place. Returns the pivot columns; afterwards
/// row `k` has a one in column `pivots[k]` and zeros in the other pivot columns.
/// With `reduce_above == false` only the entries below each pivot are cleared.
fn eliminate(rows: &mut [Vec<BigRational>], cols: usize, reduce_above: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(k) = choose_pivot(rows, r, c) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].recip();
        for x in rows[r][c..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || (!reduce_above && i < r) || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot[j].is_zero() {
                    row[j] -= &factor * &pivot[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn to_rows(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    m.iter_rows().map(<[_]>::to_vec).collect()
}

/// Rank over the rationals.
pub fn rank_exact(m: &RatMatrix) -> usize {
    let mut rows = to_rows(m);
    eliminate(&mut rows, m.cols(), false).len()
}

/// A basis of the right kernel, one vector per free column of the reduced
/// row echelon form. The free coordinate of each vector is one.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let mut rows = to_rows(m);
    let pivots = eliminate(&mut rows, m.cols(), true);
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); m.cols()];
            v[f] = BigRational::one();
            for (k, &c) in pivots.iter().enumerate() {
                v[c] = -rows[k][f].clone();
            }
            v
        })
        .collect()
}

/// Each row scaled by the lcm of its denominators. The kernel is unchanged.
pub(crate) fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    m.iter_rows()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn empty_and_identity() {
        assert_eq!(rank_exact(&RatMatrix::zeros(0, 0)), 0);
        assert_eq!(rank_exact(&RatMatrix::identity(3)), 3);
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 3)).len(), 3);
        assert_eq!(rank_exact(&RatMatrix::zeros(0, 4)), 0);
        assert_eq!(kernel_basis(&RatMatrix::zeros(0, 4)).len(), 4);
    }

    /// Conditions of a double point at a general affine point (u, v) = (2, 3)
    /// of the plane on the degree-1 monomials {1, u, v} and two extra
    /// columns u^2, uv. Rows: value, d/du, d/dv. Eliminating by hand:
    ///   [1 2 3 4 6]      [1 2 3 4 6]
    ///   [0 1 0 4 3]  ->  [0 1 0 4 3]
    ///   [0 0 1 0 2]      [0 0 1 0 2]
    /// is already upper triangular with three pivots.
    #[test]
    fn double_point_conditions() {
        let a = m(&[&[1, 2, 3, 4, 6], &[0, 1, 0, 4, 3], &[0, 0, 1, 0, 2]]);
        assert_eq!(rank_exact(&a), 3);
        let ker = kernel_basis(&a);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn dependent_rows() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(1)],
            vec![int(3), int(2), int(6)],
            vec![int(1), int(0), int(1)],
        ]);
        assert_eq!(rank_exact(&a), 2);
        assert_eq!(rank_exact(&a.transpose()), 2);
    }

    #[test]
    fn integerized_rows_keep_kernel() {
        let a = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3), rat(-5, 6)]]);
        let rows = integer_rows(&a);
        assert_eq!(rows[0], vec![BigInt::from(3), BigInt::from(2), BigInt::from(-5)]);
    }

    #[test]
    fn select_and_transpose() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.select(&[1], &[2, 0]), m(&[&[6, 4]]));
        assert_eq!(a.transpose(), m(&[&[1, 4], &[2, 5], &[3, 6]]));
    }
}
