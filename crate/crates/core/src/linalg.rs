//! Dense matrices over GF(q) and Gaussian elimination.

use crate::gf::{Element, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Element::ZERO; rows * cols] }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<Element>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Element {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Element) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Element] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Element] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Element]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, field: &Field, v: &[Element]) -> Vec<Element> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Element::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(a, g));
            }
        }
        out
    }

    /// Reduced row echelon form. Pivots are chosen column by column, left to
    /// right, taking the first row with a nonzero entry. Returns the reduced
    /// matrix and its pivot columns.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = field.inv(m.get(row, col)).expect("pivot is nonzero");
            for v in m.row_mut(row) {
                *v = field.mul(*v, inv);
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for (v, &pv) in m.row_mut(r).iter_mut().zip(&pivot_row) {
                    *v = field.sub(*v, field.mul(factor, pv));
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}
