//! Banded elimination for the absorbing-chain systems.
//!
//! Rows are combined as `row_i <- pivot * row_i - a_ik * row_k` (no division), then
//! rescaled through [`Scalar::normalize_row`]. Over exact rationals every row is
//! kept as a primitive integer vector, which is the fraction-free scheme; over
//! floats the rescaling is a plain equilibration. No pivoting is done: the
//! systems handed in are nonsingular M-matrices whose leading minors are positive.
//! Fill-in stays inside the row envelope, so the cost is `O(n * bandwidth^2)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct LinearSystem<T> {
    n: usize,
    nrhs: usize,
    /// Row-major `n x (n + nrhs)`; right-hand sides are appended as extra columns.
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new(n: usize, nrhs: usize) -> Self {
        Self { n, nrhs, rows: vec![vec![T::zero(); n + nrhs]; n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, i: usize, j: usize, v: T) {
        let e = &mut self.rows[i][j];
        *e = e.clone() + v;
    }

    pub fn add_rhs(&mut self, i: usize, r: usize, v: T) {
        let e = &mut self.rows[i][self.n + r];
        *e = e.clone() + v;
    }

    /// Solve for every right-hand side; returns `x[i][r]`.
    pub fn solve(mut self) -> Result<Vec<Vec<T>>> {
        let n = self.n;
        // Column span [first, end) of the coefficient part of each row.
        let mut first = vec![n; n];
        let mut end = vec![0; n];
        for (i, row) in self.rows.iter_mut().enumerate() {
            for (j, v) in row[..n].iter().enumerate() {
                if !v.is_zero() {
                    first[i] = first[i].min(j);
                    end[i] = j + 1;
                }
            }
            T::normalize_row(row);
        }
        // last_row[k]: largest row index whose first nonzero is at or before column k.
        let mut last_row = vec![0; n];
        let mut reach = 0;
        let mut by_first: Vec<usize> = (0..n).collect();
        by_first.sort_by_key(|&i| first[i]);
        let mut cursor = 0;
        for (k, slot) in last_row.iter_mut().enumerate() {
            while cursor < n && first[by_first[cursor]] <= k {
                reach = reach.max(by_first[cursor]);
                cursor += 1;
            }
            *slot = reach;
        }

        for k in 0..n {
            if self.rows[k][k].is_zero() {
                return Err(Error::SingularSystem);
            }
            let (upper, lower) = self.rows.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            let pivot = pivot_row[k].clone();
            for (off, row) in lower.iter_mut().enumerate().take(last_row[k].saturating_sub(k)) {
                let i = k + 1 + off;
                if row[k].is_zero() {
                    continue;
                }
                let factor = row[k].clone();
                let stop = end[i].max(end[k]);
                for j in k..stop {
                    row[j] = pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                }
                for j in n..n + self.nrhs {
                    row[j] = pivot.clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                }
                end[i] = stop;
                T::normalize_row(&mut row[k + 1..]);
            }
        }

        let mut x = vec![vec![T::zero(); self.nrhs]; n];
        for k in (0..n).rev() {
            let row = &self.rows[k];
            for r in 0..self.nrhs {
                let mut acc = row[n + r].clone();
                for j in k + 1..end[k] {
                    if !row[j].is_zero() {
                        acc = acc - row[j].clone() * x[j][r].clone();
                    }
                }
                x[k][r] = acc / row[k].clone();
            }
        }
        Ok(x)
    }
}
