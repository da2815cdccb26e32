//! Smith forms and kernels against determinantal divisors and brute force.

use johnson_core::lattice::{kernel_lattice, smith_normal_form, Lattice, Matrix};
use johnson_core::{Int, Scalar};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix<Int> {
    Matrix::new(rows, cols, entries.iter().map(|&v| Int::from(v)).collect()).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k x k` minors.
fn determinantal_divisor(m: &Matrix<Int>, k: usize) -> Int {
    let mut d = Int::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let minor: Vec<Int> = rs
                .iter()
                .flat_map(|&r| cs.iter().map(move |&c| m[(r, c)].clone()))
                .collect();
            let det = Matrix::new(k, k, minor).unwrap().determinant().unwrap();
            d = d.gcd(&det);
        }
    }
    d
}

fn arb_matrix() -> impl Strategy<Value = Matrix<Int>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| matrix(r, c, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in arb_matrix()) {
        let s = smith_normal_form(&m);
        let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j && i < s.diag.len() { s.diag[i].clone() } else { Int::zero() };
                prop_assert_eq!(&d[(i, j)], &expected);
            }
        }
        prop_assert_eq!(s.left.determinant().unwrap().abs(), Int::from(1));
        prop_assert_eq!(s.right.determinant().unwrap().abs(), Int::from(1));
        for w in s.diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn invariant_factors_match_determinantal_divisors(m in arb_matrix()) {
        let s = smith_normal_form(&m);
        let mut prev = Int::from(1);
        for k in 1..=m.rows().min(m.cols()) {
            let dk = determinantal_divisor(&m, k);
            let expected = if dk.is_zero() { Int::zero() } else { &dk / &prev };
            prop_assert_eq!(s.diag[k - 1].abs(), expected);
            if dk.is_zero() {
                break;
            }
            prev = dk;
        }
    }

    #[test]
    fn kernel_is_annihilated_and_complements_rank(m in arb_matrix()) {
        let k = kernel_lattice(&m);
        for i in 0..k.rank() {
            let v = m.apply(k.basis().row(i)).unwrap();
            prop_assert!(v.iter().all(Zero::is_zero));
        }
        prop_assert_eq!(k.rank() + m.rank(), m.cols());
        // saturated: Z^n / ker is torsion free
        let factors = Lattice::full(m.cols()).quotient_invariants(&k).unwrap();
        prop_assert!(factors.iter().all(Zero::is_zero), "torsion {:?}", factors);
        prop_assert_eq!(factors.len(), m.rank());
    }

    #[test]
    fn lattice_equality_is_an_equivalence(
        a in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..4),
        u in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let rows: Vec<Vec<Int>> = a.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect();
        let x = Lattice::from_vectors(3, rows.clone()).unwrap();
        // same lattice from a different generating set: add a combination of the generators
        let mut extra = vec![Int::zero(); 3];
        for (r, c) in rows.iter().zip(u.iter().cycle()) {
            for j in 0..3 {
                extra[j] += &r[j] * Int::from(*c);
            }
        }
        let mut more = rows.clone();
        more.push(extra);
        more.reverse();
        let y = Lattice::from_vectors(3, more).unwrap();
        let z = Lattice::from_vectors(3, rows).unwrap();
        prop_assert_eq!(&x, &x);
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(&y, &x);
        prop_assert!(y == z && x == z);
    }
}

#[test]
fn known_invariant_factors() {
    // diag(2, 6) disguised by unimodular moves
    let m = matrix(2, 2, &[2, 4, 6, 6]);
    let s = smith_normal_form(&m);
    assert_eq!(s.diag, vec![Int::from(2), Int::from(6)]);
    assert_eq!(<Int as Scalar>::of_i64(12), determinantal_divisor(&m, 2).abs());
}
