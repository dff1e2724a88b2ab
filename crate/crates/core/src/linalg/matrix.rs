use alloc::vec;
use alloc::vec::Vec;

use super::IndexSet;
use crate::error::{check_len, Error, Result};
use crate::math;

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_len(rows * cols, data.len())?;
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len(cols, r.len())?;
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[&[f64]]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        let cols = columns.len();
        let mut data = vec![0.0; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            check_len(rows, c.len())?;
            for (i, &v) in c.iter().enumerate() {
                data[i * cols + j] = v;
            }
        }
        Self::new(rows, cols, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// `A x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.cols, x.len())?;
        Ok((0..self.rows).map(|i| math::dot(self.row(i), x)).collect())
    }

    /// `Aᵀ v`.
    pub fn adjoint_matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.rows, v.len())?;
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi != 0.0 {
                math::axpy(vi, self.row(i), &mut out);
            }
        }
        Ok(out)
    }

    /// `A x` where `x` is zero outside `support`; `values` holds the entries on
    /// `support` in order.
    pub fn matvec_on(&self, support: &IndexSet, values: &[f64]) -> Result<Vec<f64>> {
        check_len(support.len(), values.len())?;
        support.check_bound(self.cols)?;
        Ok((0..self.rows)
            .map(|i| {
                let row = self.row(i);
                support.iter().zip(values).map(|(j, v)| row[j] * v).sum()
            })
            .collect())
    }

    /// The `m × |T|` matrix formed by the columns listed in `support`.
    pub fn restrict_columns(&self, support: &IndexSet) -> Result<DenseMatrix> {
        support.check_bound(self.cols)?;
        let k = support.len();
        let mut data = Vec::with_capacity(self.rows * k);
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(support.iter().map(|j| row[j]));
        }
        Ok(DenseMatrix { rows: self.rows, cols: k, data })
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<DenseMatrix> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange { index: i, len: self.rows });
            }
            data.extend_from_slice(self.row(i));
        }
        Ok(DenseMatrix { rows: rows.len(), cols: self.cols, data })
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product `A B`.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_len(self.cols, other.rows)?;
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a != 0.0 {
                    math::axpy(a, other.row(k), dst);
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix `AᵀA` (cols × cols, row-major).
    pub fn gram(&self) -> DenseMatrix {
        let n = self.cols;
        let mut g = DenseMatrix::zeros(n, n);
        for i in 0..self.rows {
            let row = self.row(i);
            for (a, &ra) in row.iter().enumerate() {
                if ra == 0.0 {
                    continue;
                }
                let dst = &mut g.data[a * n + a..(a + 1) * n];
                math::axpy(ra, &row[a..], dst);
            }
        }
        for a in 0..n {
            for b in 0..a {
                g.data[a * n + b] = g.data[b * n + a];
            }
        }
        g
    }

    /// Row Gram matrix `AAᵀ` (rows × rows).
    pub fn outer_gram(&self) -> DenseMatrix {
        let m = self.rows;
        let mut g = DenseMatrix::zeros(m, m);
        for a in 0..m {
            for b in a..m {
                let v = math::dot(self.row(a), self.row(b));
                g.data[a * m + b] = v;
                g.data[b * m + a] = v;
            }
        }
        g
    }

    pub fn scaled(&self, c: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies column `j` by `scales[j]`.
    pub fn scale_columns(&self, scales: &[f64]) -> Result<DenseMatrix> {
        check_len(self.cols, scales.len())?;
        let mut out = self.clone();
        for i in 0..self.rows {
            for (x, s) in out.data[i * self.cols..(i + 1) * self.cols].iter_mut().zip(scales) {
                *x *= s;
            }
        }
        Ok(out)
    }

    pub fn row_norms_sq(&self) -> Vec<f64> {
        (0..self.rows).map(|i| math::dot(self.row(i), self.row(i))).collect()
    }

    pub fn column_norms_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                *o += x * x;
            }
        }
        out
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn matvec_examples() {
        let id = DenseMatrix::identity(2);
        assert_eq!(id.matvec(&[3.0, -1.0]).unwrap(), vec![3.0, -1.0]);
        let a = DenseMatrix::from_rows(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]]).unwrap();
        assert_eq!(a.matvec(&[1.0, 1.0, 1.0]).unwrap(), vec![2.0, 2.0]);
        assert_eq!(a.matvec(&[0.0; 3]).unwrap(), vec![0.0, 0.0]);
        assert!(matches!(a.matvec(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn adjoint_examples() {
        let id = DenseMatrix::identity(2);
        assert_eq!(id.adjoint_matvec(&[1.0, 2.0]).unwrap(), vec![1.0, 2.0]);
        let a = DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(a.adjoint_matvec(&[1.0, 1.0, 1.0]).unwrap(), vec![2.0, 2.0]);
        assert_eq!(a.adjoint_matvec(&[0.0; 3]).unwrap(), vec![0.0, 0.0]);
        assert!(a.adjoint_matvec(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn restrict_examples() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0, 3.0]]).unwrap();
        let all = IndexSet::full(3);
        assert_eq!(a.restrict_columns(&all).unwrap(), a);
        let t = IndexSet::new(vec![0, 2], 3).unwrap();
        assert_eq!(a.restrict_columns(&t).unwrap().as_slice(), &[1.0, 3.0]);
        let empty = a.restrict_columns(&IndexSet::empty()).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (1, 0));
        let bad = IndexSet::from_unsorted(vec![5]);
        assert!(matches!(a.restrict_columns(&bad), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn gram_matches_transpose_product() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0, 0.5], &[-1.0, 0.0, 3.0]]).unwrap();
        let g = a.gram();
        let g2 = a.transpose().matmul(&a).unwrap();
        assert_eq!(g, g2);
        let o = a.outer_gram();
        assert_eq!(o, a.matmul(&a.transpose()).unwrap());
    }

    #[test]
    fn rejects_non_finite() {
        assert_eq!(DenseMatrix::new(1, 1, vec![f64::NAN]), Err(Error::NonFinite));
    }
}
