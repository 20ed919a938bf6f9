//! Dense rational matrices and the Cayley transform.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::PolyError;
use crate::rational::Rational;
use crate::vector::QVector;

/// A dense row-major matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: alloc::vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of integers. Panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&e| crate::rational::rat_int(e)));
        }
        QMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix from owned rational rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Matrix product. Panics on dimension mismatch.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.at(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = lhs * other.at(k, j);
                    *out.at_mut(i, j) += term;
                }
            }
        }
        out
    }

    /// Matrix-vector product. Panics on dimension mismatch.
    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        QVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| self.at(i, j) * &v[j])
                        .fold(Rational::zero(), |acc, t| acc + t)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact inverse via Gauss-Jordan elimination, or None if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.at(r, col).is_zero())?;
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = work.at(col, col).clone();
            for j in 0..n {
                *work.at_mut(col, j) /= &pivot;
                *inv.at_mut(col, j) /= &pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let w = work.at(col, j) * &factor;
                    *work.at_mut(r, j) -= w;
                    let v = inv.at(col, j) * &factor;
                    *inv.at_mut(r, j) -= v;
                }
            }
        }
        Some(inv)
    }

    /// Exact determinant via fraction-preserving Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !work.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                det = -det;
            }
            let pivot = work.at(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = work.at(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let w = work.at(col, j) * &factor;
                    *work.at_mut(r, j) -= w;
                }
            }
        }
        det
    }

    /// Rank via exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..work.cols {
            let Some(pivot_row) = (row..work.rows).find(|&r| !work.at(r, col).is_zero()) else {
                continue;
            };
            work.swap_rows(pivot_row, row);
            let pivot = work.at(row, col).clone();
            for r in row + 1..work.rows {
                let factor = work.at(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..work.cols {
                    let w = work.at(row, j) * &factor;
                    *work.at_mut(r, j) -= w;
                }
            }
            rank += 1;
            row += 1;
            if row == work.rows {
                break;
            }
        }
        rank
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != -self.at(j, i).clone() {
                    return false;
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Maps a skew-symmetric rational matrix to an exact rotation matrix.
///
/// Returns R = (I - S)(I + S)^-1, which satisfies R^T R = I and det R = 1
/// with rational entries. I + S is invertible for every skew-symmetric S,
/// so the only error case is a non-skew input. Rotations with eigenvalue -1
/// are outside the range of this map.
pub fn cayley_rotation(s: &QMatrix) -> Result<QMatrix, PolyError> {
    if !s.is_skew_symmetric() {
        return Err(PolyError::InvalidInput(
            "cayley transform requires a skew-symmetric matrix".into(),
        ));
    }
    let n = s.rows();
    let eye = QMatrix::identity(n);
    let plus = eye.add(s);
    let minus = eye.sub(s);
    let inv = plus
        .inverse()
        .ok_or(PolyError::Internal("I + S singular for skew-symmetric S"))?;
    Ok(minus.mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn product_and_transpose() {
        let a = QMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), QMatrix::from_int_rows(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), QMatrix::from_int_rows(&[&[1, 3], &[2, 4]]));
        let v = QVector::from_ints(&[1, -1]);
        assert_eq!(a.mul_vec(&v), QVector::from_ints(&[-1, -1]));
    }

    #[test]
    fn inverse_round_trips() {
        let a = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert_eq!(inv.mul(&a), QMatrix::identity(2));

        let singular = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn det_and_rank() {
        let a = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(), rat_int(1));
        assert_eq!(a.rank(), 2);

        let b = QMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.det(), rat_int(0));

        let c = QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(c.det(), rat_int(-1));
    }

    #[test]
    fn cayley_of_standard_skew() {
        let s = QMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]);
        let r = cayley_rotation(&s).unwrap();
        assert_eq!(r, QMatrix::from_int_rows(&[&[0, -1], &[1, 0]]));
        assert_eq!(r.transpose().mul(&r), QMatrix::identity(2));
        assert_eq!(r.det(), rat_int(1));
    }

    #[test]
    fn cayley_is_orthogonal_with_fractional_entries() {
        let mut s = QMatrix::zeros(3, 3);
        *s.at_mut(0, 1) = rat(1, 2);
        *s.at_mut(1, 0) = rat(-1, 2);
        *s.at_mut(0, 2) = rat(-2, 3);
        *s.at_mut(2, 0) = rat(2, 3);
        *s.at_mut(1, 2) = rat(1, 5);
        *s.at_mut(2, 1) = rat(-1, 5);
        let r = cayley_rotation(&s).unwrap();
        assert_eq!(r.transpose().mul(&r), QMatrix::identity(3));
        assert_eq!(r.det(), rat_int(1));
    }

    #[test]
    fn cayley_rejects_non_skew() {
        let s = QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert!(cayley_rotation(&s).is_err());
        let diag = QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        assert!(cayley_rotation(&diag).is_err());
    }

    #[test]
    fn cayley_of_zero_is_identity() {
        let s = QMatrix::zeros(4, 4);
        assert_eq!(cayley_rotation(&s).unwrap(), QMatrix::identity(4));
    }
}
