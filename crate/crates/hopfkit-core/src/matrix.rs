//! Dense matrices for linear maps between based spaces.

use crate::error::{Error, Result};
use crate::scalar::{unit_vec, vec_sub_scaled, zero_vec, Field, Scalar};
use crate::subspace::RrefBuilder;

/// A `rows x cols` matrix; as a linear map it sends `k^cols -> k^rows`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![zero_vec(field, cols); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Vec<Scalar>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("matrix shape mismatch".into()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Build from columns: `cols[j]` is the image of the j-th basis vector.
    pub fn from_cols(field: Field, rows: usize, cols: Vec<Vec<Scalar>>) -> Result<Self> {
        let ncols = cols.len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Input("matrix column height mismatch".into()));
        }
        let mut m = Matrix::zeros(field, rows, ncols);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.data[i][j] = v;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.data[i][j].clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix apply width mismatch");
        let mut out = zero_vec(self.field, self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let m = &self.data[i][j];
                if !m.is_zero() {
                    out[i] = out[i].add(&m.mul(x));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// self * other as composition of linear maps (apply `other` first).
    pub fn compose(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Input("matrix composition shape mismatch".into()));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for j in 0..other.cols {
            let img = self.apply(&other.col(j));
            for i in 0..self.rows {
                out.data[i][j] = img[i].clone();
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut b = RrefBuilder::new(self.field, self.cols);
        for r in &self.data {
            b.insert(r.clone());
        }
        b.rank()
    }

    /// Exact inverse by Gauss-Jordan on the augmented matrix; None when the
    /// matrix is not square or singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.data[i].clone();
                row.extend(unit_vec(self.field, n, i));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].inv();
            for x in aug[col].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let c = aug[r][col].clone();
                    let base = aug[col].clone();
                    vec_sub_scaled(&mut aug[r], &base, &c);
                }
            }
        }
        let data = aug.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Matrix {
            field: self.field,
            rows: n,
            cols: n,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Q
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(
            q(),
            2,
            2,
            vec![
                vec![q().int(1), q().int(2)],
                vec![q().int(3), q().int(5)],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), Matrix::identity(q(), 2));
        assert_eq!(inv.compose(&m).unwrap(), Matrix::identity(q(), 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix::from_rows(
            q(),
            2,
            2,
            vec![
                vec![q().int(1), q().int(2)],
                vec![q().int(2), q().int(4)],
            ],
        )
        .unwrap();
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }
}
