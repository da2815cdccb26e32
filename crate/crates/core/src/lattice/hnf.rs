//! Row echelon and Hermite normal forms over the integers.


use super::matrix::Matrix;
use crate::scalar::Scalar;

/// Unimodular row reduction of `m` to echelon form in its first `ncols`
/// columns. Pivots end up positive; returns the number of pivot rows, which
/// occupy the top of the matrix.
pub fn echelonize<T: Scalar>(m: &mut Matrix<T>, ncols: usize) -> usize {
    let rows = m.rows();
    let mut cur = 0;
    for col in 0..ncols.min(m.cols()) {
        if cur == rows {
            break;
        }
        // Bring the smallest nonzero entry up to keep coefficients small.
        let mut best: Option<usize> = None;
        for r in cur..rows {
            let v = &m[(r, col)];
            if !v.is_zero() && best.is_none_or(|b| v.abs() < m[(b, col)].abs()) {
                best = Some(r);
            }
        }
        let Some(b) = best else { continue };
        m.swap_rows(cur, b);
        for r in cur + 1..rows {
            if m[(r, col)].is_zero() {
                continue;
            }
            let a = m[(cur, col)].clone();
            let b = m[(r, col)].clone();
            if b.is_multiple_of(&a) {
                let q = b / a;
                m.add_row_multiple(r, cur, &(-q));
                continue;
            }
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let (s, t) = (eg.x, eg.y);
            let c = -(b / g.clone());
            let d = a / g;
            m.combine_rows(cur, r, &s, &t, &c, &d);
        }
        if m[(cur, col)].is_negative() {
            m.negate_row(cur);
        }
        cur += 1;
    }
    cur
}

/// Pivot column of each row of an echelon matrix with `rank` pivot rows.
pub fn pivot_columns<T: Scalar>(m: &Matrix<T>, rank: usize) -> Vec<usize> {
    (0..rank)
        .map(|i| {
            m.row(i)
                .iter()
                .position(|v| !v.is_zero())
                .expect("pivot row is zero")
        })
        .collect()
}

/// Reduced row Hermite normal form of the row space of `m`: zero rows are
/// dropped, pivots are positive and entries above each pivot lie in
/// `[0, pivot)`. Two matrices span the same lattice iff their forms agree.
pub fn hermite_normal_form<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let mut a = m.clone();
    let rank = echelonize(&mut a, m.cols());
    let pivots = pivot_columns(&a, rank);
    for (i, &p) in pivots.iter().enumerate() {
        let piv = a[(i, p)].clone();
        for j in 0..i {
            let v = a[(j, p)].clone();
            if v.is_zero() {
                continue;
            }
            let q = v.div_floor(&piv);
            if !q.is_zero() {
                a.add_row_multiple(j, i, &(-q));
            }
        }
    }
    let rows = (0..rank).map(|i| a.row(i).to_vec()).collect();
    Matrix::from_rows(m.cols(), rows).expect("consistent width")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn hnf_is_canonical_for_equivalent_bases() {
        let a = Matrix::<BigInt>::from_i64_rows(&[&[1, 1], &[0, 2]]);
        let b = Matrix::<BigInt>::from_i64_rows(&[&[1, -1], &[0, 2]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
    }

    #[test]
    fn hnf_drops_dependent_rows() {
        let a = Matrix::<i64>::from_i64_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 5]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, Matrix::from_i64_rows(&[&[1, 2, 3], &[0, 0, 5]]));
    }

    #[test]
    fn rank_of_dependent_matrix() {
        let a = Matrix::<i64>::from_i64_rows(&[&[1, 2], &[2, 4], &[3, 6]]);
        assert_eq!(a.rank(), 1);
    }
}
