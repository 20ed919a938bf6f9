//! Dense rational vectors.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// A dense vector with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    /// The zero vector of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        QVector(alloc::vec![Rational::zero(); dim])
    }

    /// Builds a vector from integer entries.
    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&e| crate::rational::rat_int(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// Inner product. Panics on dimension mismatch.
    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "add of mismatched dimensions");
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "sub of mismatched dimensions");
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * factor).collect())
    }

    /// Squared Euclidean norm, exact.
    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    /// Sum of absolute values, exact.
    pub fn l1_norm(&self) -> Rational {
        self.0
            .iter()
            .map(|a| a.abs())
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Number of nonzero entries.
    pub fn sparsity(&self) -> usize {
        self.0.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Flips the sign of every coordinate whose index is absent from `keep`.
    ///
    /// `keep` must be sorted ascending; entries listed there are preserved.
    pub fn reflect(&self, keep: &[usize]) -> QVector {
        let mut out = self.0.clone();
        let mut next = 0usize;
        for (i, entry) in out.iter_mut().enumerate() {
            if next < keep.len() && keep[next] == i {
                next += 1;
            } else {
                *entry = -entry.clone();
            }
        }
        QVector(out)
    }
}

impl core::ops::Index<usize> for QVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl core::ops::IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn dot_and_norms() {
        let v = QVector::from_ints(&[3, -4]);
        let w = QVector::from_ints(&[1, 2]);
        assert_eq!(v.dot(&w), rat_int(-5));
        assert_eq!(v.norm_sq(), rat_int(25));
        assert_eq!(v.l1_norm(), rat_int(7));
        assert_eq!(v.sparsity(), 2);
    }

    #[test]
    fn arithmetic() {
        let v = QVector::from_ints(&[1, 2, 3]);
        let w = QVector::from_ints(&[4, 5, 6]);
        assert_eq!(v.add(&w), QVector::from_ints(&[5, 7, 9]));
        assert_eq!(w.sub(&v), QVector::from_ints(&[3, 3, 3]));
        assert_eq!(v.scale(&rat(1, 2)).0[2], rat(3, 2));
    }

    #[test]
    fn reflect_flips_complement() {
        let v = QVector::from_ints(&[1, 2, 3, 4]);
        assert_eq!(v.reflect(&[0, 2]), QVector::from_ints(&[1, -2, 3, -4]));
        assert_eq!(v.reflect(&[]), QVector::from_ints(&[-1, -2, -3, -4]));
        assert_eq!(v.reflect(&[0, 1, 2, 3]), v);
    }

    #[test]
    fn sparsity_counts_nonzeros() {
        let v = QVector::from_ints(&[0, 5, 0, -1]);
        assert_eq!(v.sparsity(), 2);
        assert!(!v.is_zero());
        assert!(QVector::zeros(3).is_zero());
    }
}
