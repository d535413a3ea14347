//! Dense exact linear algebra over a field.

use crate::ring::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, field: &F, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let v = field.add(out.get(i, j), &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).expect("pivot");
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if field.is_zero(&f) {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &F) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().row_reduce(field).len()
    }

    /// Basis of the right kernel {v : A v = 0}, one vector per free column.
    pub fn kernel(&self, field: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(field);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    #[test]
    fn rank_and_kernel() {
        let q = Rationals;
        let cols: Vec<Vec<_>> = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
            .iter()
            .map(|c| c.iter().map(|&v| q.from_i64(v)).collect())
            .collect();
        let m = Matrix::from_columns(&q, 3, &cols);
        assert_eq!(m.rank(&q), 2);
        let ker = m.kernel(&q);
        assert_eq!(ker.len(), 1);
        let v = Matrix::from_columns(&q, 3, &ker);
        assert!(m.mul(&q, &v).is_zero(&q));
    }

    #[test]
    fn empty_shapes() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(Matrix::zeros(&f, 0, 3).rank(&f), 0);
        assert_eq!(Matrix::zeros(&f, 0, 3).kernel(&f).len(), 3);
        assert_eq!(Matrix::zeros(&f, 2, 0).rank(&f), 0);
    }
}
