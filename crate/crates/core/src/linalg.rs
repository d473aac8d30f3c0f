//! Dense exact linear algebra over a [`FieldSpec`].

use alloc::vec::Vec;

use crate::scalar::{FieldSpec, Scalar};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: alloc::vec![field.zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(p * self.cols + c, row * self.cols + c);
            }
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in 0..self.cols {
                    let v = self.get(r, c) - &(&f * self.get(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{ x : M x = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = alloc::vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let k = FieldSpec::default_prime();
        let mut m = Matrix::zeros(k, 2, 3);
        for (c, v) in [1, 2, 3].into_iter().enumerate() {
            m.set(0, c, k.int(v));
            m.set(1, c, k.int(2 * v));
        }
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            let s = (0..3).fold(k.zero(), |acc, c| &acc + &(m.get(0, c) * &v[c]));
            assert!(s.is_zero());
        }
    }
}
