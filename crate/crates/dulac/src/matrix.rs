//! Dense exact matrices with Gaussian elimination, rank, kernel bases, and
//! inverses over any [`Scalar`] field.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A dense `rows x cols` matrix with exact entries, row-major storage.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::dimension(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when the matrix is square with zero off-diagonal entries.
    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() * factor.clone()
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() + rhs.get(r, c).clone()
        }))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() - rhs.get(r, c).clone()
        }))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let term = self.get(r, k).clone() * rhs.get(k, c).clone();
                acc = acc + term;
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::dimension(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for c in 0..self.cols {
                    acc = acc + self.get(r, c).clone() * v[c].clone();
                }
                acc
            })
            .collect())
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form and the pivot columns, by exact Gaussian
    /// elimination with first-nonzero pivoting.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot_row = match (row..m.rows).find(|&r| !m.get(r, col).is_zero()) {
                Some(r) => r,
                None => continue,
            };
            m.swap_rows(row, pivot_row);
            let inv = m
                .get(row, col)
                .checked_inv()
                .expect("pivot entry is nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space in reduced-echelon parameter form: one
    /// vector per free column in ascending column order, each scaled so its
    /// first nonzero coordinate is 1. Empty when the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &col) in pivots.iter().enumerate() {
                let entry = rref.get(row, free);
                if !entry.is_zero() {
                    v[col] = -entry.clone();
                }
            }
            normalize_leading(&mut v);
            basis.push(v);
        }
        basis
    }

    /// Particular solution of `self * x = rhs` with all free variables set to
    /// zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[S]) -> Result<Option<Vec<S>>> {
        if rhs.len() != self.rows {
            return Err(Error::dimension(format!(
                "right-hand side length {} does not match {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let augmented = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let (rref, pivots) = augmented.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = rref.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Exact inverse, or [`Error::SingularMatrix`].
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dimension("inverse of a non-square matrix".to_string()));
        }
        let n = self.rows;
        let augmented = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                S::one()
            } else {
                S::zero()
            }
        });
        let (rref, pivots) = augmented.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::from_fn(n, n, |r, c| rref.get(r, n + c).clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &S) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = self.data[idx].clone() * factor.clone();
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: &S) {
        for c in 0..self.cols {
            let t = target * self.cols + c;
            let s = source * self.cols + c;
            self.data[t] = self.data[t].clone() - self.data[s].clone() * factor.clone();
        }
    }
}

/// Scale a vector so its first nonzero coordinate is 1 (no-op on zero).
fn normalize_leading<S: Scalar>(v: &mut [S]) {
    if let Some(lead) = v.iter().find(|e| !e.is_zero()) {
        let inv = lead.checked_inv().expect("leading entry is nonzero");
        if !inv.is_one() {
            for e in v.iter_mut() {
                *e = e.clone() * inv.clone();
            }
        }
    }
}

impl<S: Scalar> fmt::Display for ExactMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;
    use proptest::prelude::*;

    type M = ExactMatrix<GaussianRational>;

    fn from_ints(rows: &[&[i64]]) -> M {
        M::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(from_ints(&[&[1, 0], &[0, 1]]).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let basis = M::zero(2, 2).kernel_basis();
        assert_eq!(
            basis,
            vec![
                vec![GaussianRational::integer(1), GaussianRational::integer(0)],
                vec![GaussianRational::integer(0), GaussianRational::integer(1)],
            ]
        );
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let basis = from_ints(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(
            basis,
            vec![vec![
                GaussianRational::integer(1),
                GaussianRational::integer(-1)
            ]]
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).rank(), 3);
        assert_eq!(M::zero(2, 3).rank(), 0);
        assert_eq!(from_ints(&[&[1, 1], &[2, 2]]).rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = from_ints(&[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), M::identity(2));
        assert_eq!(inv.mul(&m).unwrap(), M::identity(2));
        assert!(matches!(
            from_ints(&[&[1, 1], &[2, 2]]).inverse(),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = from_ints(&[&[1, 1], &[2, 2]]);
        let sol = m
            .solve(&[GaussianRational::integer(3), GaussianRational::integer(6)])
            .unwrap()
            .unwrap();
        assert_eq!(m.mul_vec(&sol).unwrap()[0], GaussianRational::integer(3));
        let none = m
            .solve(&[GaussianRational::integer(3), GaussianRational::integer(7)])
            .unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn kernel_is_stable_under_row_permutation() {
        let m = from_ints(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        let permuted = from_ints(&[&[1, 3, 4], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(m.kernel_basis(), permuted.kernel_basis());
    }

    fn small_matrix() -> impl Strategy<Value = M> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..=4, r * c).prop_map(move |vals| {
                let mut m = M::zero(r, c);
                for (idx, v) in vals.into_iter().enumerate() {
                    m.set(idx / c, idx % c, GaussianRational::integer(v));
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_satisfy_mv_zero(m in small_matrix()) {
            let basis = m.kernel_basis();
            prop_assert_eq!(m.rank() + basis.len(), m.cols());
            for v in basis {
                let mv = m.mul_vec(&v).unwrap();
                prop_assert!(mv.iter().all(|e| e.is_zero()));
            }
        }
    }
}
