//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            // Find a pivot row with nonzero entry in this column.
            let mut pivot = None;
            for r in lead..self.rows {
                if !self.get(r, col).is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(lead, p);
            let inv = self.get(lead, col).recip();
            for c in col..self.cols {
                let v = self.get(lead, c) * &inv;
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r != lead && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &factor * self.get(lead, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[fc] = Rational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, fc).clone();
            }
            basis.push(v);
        }
        basis
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

/// An incrementally built row space in echelon form. The workhorse behind
/// graded-piece spans, minimal generator selection, and homology ranks.
#[derive(Debug, Clone)]
pub struct RowSpace {
    ncols: usize,
    /// Echelon rows, each normalized to pivot coefficient one, kept sorted by
    /// pivot column and mutually reduced.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against the space; the remainder is zero iff the row is
    /// in the span.
    pub fn reduce(&self, mut row: Vec<Rational>) -> Vec<Rational> {
        assert_eq!(row.len(), self.ncols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x -= &factor * y;
                }
            }
        }
        row
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        self.reduce(row.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Inserts a row; returns true when the dimension grew.
    pub fn insert(&mut self, row: Vec<Rational>) -> bool {
        let mut reduced = self.reduce(row);
        let Some(pivot) = reduced.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = reduced[pivot].recip();
        for x in reduced.iter_mut() {
            *x *= &inv;
        }
        // Back-substitute into existing rows to keep the space reduced.
        for (r, &_p) in self.rows.iter_mut().zip(&self.pivots) {
            if !r[pivot].is_zero() {
                let factor = r[pivot].clone();
                for (x, y) in r.iter_mut().zip(&reduced) {
                    *x -= &factor * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, reduced);
        true
    }

    /// The echelon rows spanning the space.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn r(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&v| rat_int(v)).collect()
    }

    #[test]
    fn rank_and_rref() {
        let m = QMatrix::from_rows(vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[0, 1, 1])]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_annihilates() {
        let m = QMatrix::from_rows(vec![r(&[1, 2, 3]), r(&[0, 1, 1])]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for row in 0..m.rows {
                let dot: Rational = (0..m.cols).map(|c| m.get(row, c) * &v[c]).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rowspace_membership() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(r(&[1, 2, 3])));
        assert!(s.insert(r(&[0, 1, 1])));
        assert!(!s.insert(r(&[1, 3, 4]))); // dependent
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&r(&[2, 5, 7])));
        assert!(!s.contains(&r(&[0, 0, 1])));
    }
}
