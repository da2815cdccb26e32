//! Smith normal form with unimodular transforms.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use crate::scalar::Scalar;

/// `left * m * right` is diagonal with entries `diag`, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm<T> {
    pub diag: Vec<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors different from one (torsion and free part of the cokernel excluded).
    pub fn nontrivial_factors(&self) -> Vec<T> {
        self.diag
            .iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut left = Matrix::identity(rows);
    let mut right = Matrix::identity(cols);
    let n = rows.min(cols);

    let mut t = 0;
    while t < n {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = &a[(i, j)];
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let p = a[(t, t)].clone();
                let v = a[(i, t)].clone();
                if v.is_multiple_of(&p) {
                    let q = -(v / p);
                    a.add_row_multiple(i, t, &q);
                    left.add_row_multiple(i, t, &q);
                } else {
                    let eg = p.extended_gcd(&v);
                    let g = eg.gcd;
                    let c = -(v / g.clone());
                    let d = p / g;
                    a.combine_rows(t, i, &eg.x, &eg.y, &c, &d);
                    left.combine_rows(t, i, &eg.x, &eg.y, &c, &d);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let p = a[(t, t)].clone();
                let v = a[(t, j)].clone();
                if v.is_multiple_of(&p) {
                    let q = -(v / p);
                    a.add_col_multiple(j, t, &q);
                    right.add_col_multiple(j, t, &q);
                } else {
                    let eg = p.extended_gcd(&v);
                    let g = eg.gcd;
                    let c = -(v / g.clone());
                    let d = p / g;
                    a.combine_cols(t, j, &eg.x, &eg.y, &c, &d);
                    right.combine_cols(t, j, &eg.x, &eg.y, &c, &d);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold any offending row into row t and retry.
            let p = a[(t, t)].clone();
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let diag = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diag, left, right }
}
