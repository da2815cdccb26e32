//! The symplectic action of `B_g` on `Lambda^3 H` and the `K_m` chain.

use johnson_core::exterior::{bg_embed, kernel_k, km_lattice, sp3_action, Space, WedgeVector};
use johnson_core::lattice::Matrix;
use johnson_core::Int;
use proptest::prelude::*;

const G: usize = 3;

fn symmetric(entries: &[i64]) -> Matrix<Int> {
    let mut m = Matrix::zeros(G, G);
    let mut k = 0;
    for i in 0..G {
        for j in i..G {
            m[(i, j)] = Int::from(entries[k]);
            m[(j, i)] = Int::from(entries[k]);
            k += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bg_fixes_lambda3_l_and_preserves_km(entries in prop::collection::vec(-3i64..=3, 6)) {
        let s = bg_embed(&symmetric(&entries)).unwrap();
        let k3 = km_lattice::<Int>(G, 3);
        for i in 0..k3.rank() {
            let w = WedgeVector::from_dense(Space::H(G), 3, k3.basis().row(i)).unwrap();
            prop_assert_eq!(sp3_action(&s, &w).unwrap(), w);
        }
        for m in 0..=2 {
            let km = km_lattice::<Int>(G, m);
            for i in 0..km.rank() {
                let w = WedgeVector::from_dense(Space::H(G), 3, km.basis().row(i)).unwrap();
                let moved = sp3_action(&s, &w).unwrap();
                prop_assert!(km.contains(&moved.to_dense()).unwrap());
                // (S - 1) raises the filtration by one
                let diff = moved.sub(&w).to_dense();
                prop_assert!(km_lattice::<Int>(G, m + 1).contains(&diff).unwrap());
            }
        }
    }
}

#[test]
fn km_chain_is_decreasing_and_brackets_k() {
    for g in 2..=4 {
        let ranks: Vec<usize> = (0..=4).map(|m| km_lattice::<Int>(g, m).rank()).collect();
        for m in 0..4 {
            let (big, small) = (km_lattice::<Int>(g, m), km_lattice::<Int>(g, m + 1));
            assert!(small.is_subset_of(&big).unwrap());
            assert_eq!(small == big, ranks[m] == ranks[m + 1], "g={g} m={m}");
        }
        let k = kernel_k::<Int>(g);
        assert!(km_lattice::<Int>(g, 2).is_subset_of(&k).unwrap());
        assert!(k.is_subset_of(&km_lattice::<Int>(g, 1)).unwrap());
        assert!(k.rank() < ranks[1], "g={g}");
        assert_eq!(k.rank() > ranks[2], g >= 3, "g={g}");
    }
}
