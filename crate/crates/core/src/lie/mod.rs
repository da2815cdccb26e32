//! The graded free Lie ring over the integers, in Lyndon coordinates.
//!
//! Letters are ordered `x_1 < .. < x_g < y_1 < .. < y_g`, so for the surface
//! alphabet the x letters are exactly the codes below `g`, and the free Lie
//! ring on the Lagrangian is the sub-ring on those letters.

mod lyndon;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use lyndon::{
    bracketing_expansion, is_lyndon, lyndon_basis, lyndon_words, standard_factorization, witt,
    LyndonBasis,
};

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Matrix};
use crate::magnus::{alphabet_size, magnus_expand};
use crate::poly::{count_below, HomogeneousPoly};
use crate::scalar::Scalar;
use crate::words::{GenSymbol, ReducedWord};

/// Homogeneous element of the free Lie ring, by Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieVector<T> {
    pub alphabet: usize,
    pub degree: usize,
    pub coords: BTreeMap<usize, T>,
}

impl<T: Scalar> LieVector<T> {
    pub fn zero(alphabet: usize, degree: usize) -> Self {
        Self {
            alphabet,
            degree,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis_element(alphabet: usize, degree: usize, index: usize) -> Self {
        let mut v = Self::zero(alphabet, degree);
        v.coords.insert(index, T::one());
        v
    }

    /// The degree-one element given by a letter.
    pub fn letter(alphabet: usize, letter: usize) -> Self {
        Self::basis_element(alphabet, 1, letter)
    }

    pub fn basis(&self) -> Arc<LyndonBasis> {
        lyndon_basis(self.alphabet, self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> T {
        self.coords.get(&i).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &T) {
        assert_eq!(
            (self.alphabet, self.degree),
            (other.alphabet, other.degree),
            "adding Lie elements of different type"
        );
        for (i, c) in &other.coords {
            let e = self.coords.entry(*i).or_insert_with(T::zero);
            e.add_assign_ref(&c.mul_ref(factor));
            if e.is_zero() {
                self.coords.remove(i);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &T::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &(-T::one()));
        out
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.alphabet, self.degree).sub(self)
    }

    /// Dense coordinate vector over the Lyndon basis.
    pub fn to_dense(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.basis().len()];
        for (i, c) in &self.coords {
            v[*i] = c.clone();
        }
        v
    }

    /// Associative expansion.
    pub fn to_poly(&self) -> HomogeneousPoly<T> {
        let basis = self.basis();
        let mut p = HomogeneousPoly::zero(self.alphabet, self.degree);
        for (i, c) in &self.coords {
            for (m, e) in &basis.expansion(*i).terms {
                p.add_term(*m, &T::of_i64(*e).mul_ref(c));
            }
        }
        p
    }

    /// Lyndon coordinates of a homogeneous Lie polynomial, by elimination
    /// against leading monomials. Fails if `p` is not a Lie element.
    pub fn from_poly(p: &HomogeneousPoly<T>) -> Result<Self> {
        let basis = lyndon_basis(p.alphabet, p.degree);
        let mut rest = p.clone();
        let mut out = Self::zero(p.alphabet, p.degree);
        while let Some((m, c)) = rest.leading() {
            let c = c.clone();
            let Some(i) = basis.index_of(m) else {
                return Err(Error::NotLie(format!(
                    "leading monomial {:?} of a degree-{} element is not a Lyndon word",
                    crate::poly::decode(m, p.degree, p.alphabet),
                    p.degree
                )));
            };
            for (mm, e) in &basis.expansion(i).terms {
                rest.add_term(*mm, &(-T::of_i64(*e).mul_ref(&c)));
            }
            debug_assert!(!rest.terms.contains_key(&m));
            out.coords.insert(i, c);
        }
        Ok(out)
    }

    /// Number of x letters (codes below `g`) in each supporting basis word.
    pub fn min_x_count(&self, g: usize) -> Option<usize> {
        let basis = self.basis();
        self.coords
            .keys()
            .map(|&i| count_below(basis.codes()[i], self.degree, self.alphabet, g))
            .min()
    }

    pub fn convert<U: Scalar>(&self) -> LieVector<U> {
        LieVector {
            alphabet: self.alphabet,
            degree: self.degree,
            coords: self.coords.iter().map(|(i, c)| (*i, c.convert())).collect(),
        }
    }
}

/// Lie bracket in Lyndon coordinates.
pub fn bracket<T: Scalar>(u: &LieVector<T>, v: &LieVector<T>) -> Result<LieVector<T>> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch("bracket of different alphabets".into()));
    }
    LieVector::from_poly(&u.to_poly().lie_bracket(&v.to_poly()))
}

/// Class of `w` in `F_n / F_{n+1}`: the degree-`n` part of its Magnus
/// expansion, in Lyndon coordinates. Requires `w` in `F_n`.
pub fn lie_class<T: Scalar>(w: &ReducedWord, n: usize) -> Result<LieVector<T>> {
    let s = magnus_expand::<T>(w, n)?;
    if let Some(d) = s.lowest_nonconstant_degree() {
        if d < n {
            return Err(Error::Precondition(format!(
                "word has degree {d}, below the requested {n}"
            )));
        }
    }
    LieVector::from_poly(&s.component(n))
}

/// Alphabet size for the Lie ring of `w`'s free group.
pub fn lie_alphabet(w: &ReducedWord) -> usize {
    alphabet_size(w)
}

/// Human-readable generator name for a letter code.
pub fn letter_name(code: u8, genus: usize) -> String {
    GenSymbol::from_code(code as usize, genus).to_string()
}

/// Element of `A (x) L_n` where `A` has `left_dim` basis vectors (the first
/// `g` of which span the Lagrangian when `A = H`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HTensorLie<T> {
    pub left_dim: usize,
    pub alphabet: usize,
    pub degree: usize,
    pub coords: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> HTensorLie<T> {
    pub fn zero(left_dim: usize, alphabet: usize, degree: usize) -> Self {
        Self {
            left_dim,
            alphabet,
            degree,
            coords: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Add `factor * (h (x) v)`.
    pub fn add_tensor(&mut self, h: usize, v: &LieVector<T>, factor: &T) {
        assert!(h < self.left_dim);
        assert_eq!((v.alphabet, v.degree), (self.alphabet, self.degree));
        for (i, c) in &v.coords {
            let e = self.coords.entry((h, *i)).or_insert_with(T::zero);
            e.add_assign_ref(&c.mul_ref(factor));
            if e.is_zero() {
                self.coords.remove(&(h, *i));
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((h, i), c) in &other.coords {
            let e = out.coords.entry((*h, *i)).or_insert_with(T::zero);
            e.add_assign_ref(c);
            if e.is_zero() {
                out.coords.remove(&(*h, *i));
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut neg = other.clone();
        for c in neg.coords.values_mut() {
            *c = -c.clone();
        }
        self.add(&neg)
    }

    /// The Lie component attached to basis vector `h`.
    pub fn component(&self, h: usize) -> LieVector<T> {
        let mut v = LieVector::zero(self.alphabet, self.degree);
        for ((hh, i), c) in self.coords.range((h, 0)..(h + 1, 0)) {
            debug_assert_eq!(*hh, h);
            v.coords.insert(*i, c.clone());
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.left_dim * lyndon_basis(self.alphabet, self.degree).len()
    }

    pub fn to_dense(&self) -> Vec<T> {
        let w = lyndon_basis(self.alphabet, self.degree).len();
        let mut v = vec![T::zero(); self.left_dim * w];
        for ((h, i), c) in &self.coords {
            v[h * w + i] = c.clone();
        }
        v
    }

    /// `b(h (x) a) = [h, a]`, landing in degree `degree + 1`. Requires the
    /// left factor to be a sub-basis of the letters.
    pub fn bracket_map(&self) -> Result<LieVector<T>> {
        if self.left_dim > self.alphabet {
            return Err(Error::Precondition("left factor is not a set of letters".into()));
        }
        let mut p = HomogeneousPoly::zero(self.alphabet, self.degree + 1);
        for h in 0..self.left_dim {
            let comp = self.component(h);
            if comp.is_zero() {
                continue;
            }
            let letter = HomogeneousPoly::letter(self.alphabet, h);
            p = p.add(&letter.lie_bracket(&comp.to_poly()));
        }
        LieVector::from_poly(&p)
    }

    pub fn convert<U: Scalar>(&self) -> HTensorLie<U> {
        HTensorLie {
            left_dim: self.left_dim,
            alphabet: self.alphabet,
            degree: self.degree,
            coords: self.coords.iter().map(|(k, c)| (*k, c.convert())).collect(),
        }
    }
}

/// Matrix of `b: A (x) L_n(A) -> L_{n+1}(A)`, `h (x) a -> [h, a]`, with
/// `A = H` (alphabet `2g`) or, when `restricted_to_l`, `A = L` (alphabet `g`).
/// Columns are indexed by `h * W_n + i`, rows by the degree `n + 1` basis.
pub fn map_b_matrix<T: Scalar>(g: usize, n: usize, restricted_to_l: bool) -> Matrix<T> {
    let k = if restricted_to_l { g } else { 2 * g };
    let dom = lyndon_basis(k, n);
    let cod = lyndon_basis(k, n + 1);
    let w = dom.len();
    let mut m = Matrix::zeros(cod.len(), k * w);
    for h in 0..k {
        let letter = HomogeneousPoly::<T>::letter(k, h);
        for i in 0..w {
            let a = dom.expansion(i).convert::<T>();
            let v = LieVector::from_poly(&letter.lie_bracket(&a)).expect("bracket is Lie");
            for (r, c) in v.coords {
                m[(r, h * w + i)] = c;
            }
        }
    }
    m
}

/// `L_m^r(H)`: brackets of length `m` with at least `r` entries in `L`,
/// as the span of Lyndon elements with at least `r` x letters.
pub fn filtration_lmr<T: Scalar>(g: usize, m: usize, r: usize) -> Lattice<T> {
    let k = 2 * g;
    let basis = lyndon_basis(k, m);
    let idx = (0..basis.len())
        .filter(|&i| count_below(basis.codes()[i], m, k, g) >= r)
        .collect();
    Lattice::coordinate(basis.len(), idx)
}

/// Whether basis tensor `h (x) e_i` of `H (x) L_m(H)` lies in
/// `F_m^r = (L (x) L_m^{r-1}) + (H (x) L_m^r)`.
fn fmr_member(g: usize, h: usize, x_letters: usize, r: usize) -> bool {
    x_letters >= r || (h < g && x_letters + 1 >= r)
}

/// `F_m^r` inside `H (x) L_m(H)`.
pub fn filtration_fmr<T: Scalar>(g: usize, m: usize, r: usize) -> Lattice<T> {
    let k = 2 * g;
    let basis = lyndon_basis(k, m);
    let w = basis.len();
    let mut idx = Vec::new();
    for h in 0..k {
        for i in 0..w {
            if fmr_member(g, h, count_below(basis.codes()[i], m, k, g), r) {
                idx.push(h * w + i);
            }
        }
    }
    Lattice::coordinate(k * w, idx)
}

/// Membership of a tensor in `F_m^r` without materializing the lattice.
pub fn fmr_contains<T: Scalar>(g: usize, r: usize, t: &HTensorLie<T>) -> bool {
    assert_eq!(t.alphabet, 2 * g, "tensor must be over the surface alphabet");
    let basis = lyndon_basis(t.alphabet, t.degree);
    t.coords.keys().all(|&(h, i)| {
        fmr_member(g, h, count_below(basis.codes()[i], t.degree, t.alphabet, g), r)
    })
}

/// Largest `r` with `t` in `F_m^r` (`m + 2` for zero).
pub fn fmr_position<T: Scalar>(g: usize, t: &HTensorLie<T>) -> usize {
    (0..=t.degree + 2)
        .rev()
        .find(|&r| fmr_contains(g, r, t))
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;
    use num_bigint::BigInt;

    #[test]
    fn class_of_basic_commutator() {
        let g = 1;
        let x = ReducedWord::x(g, Alphabet::Full, 1).unwrap();
        let y = ReducedWord::y(g, 1).unwrap();
        let c = x.commutator(&y).unwrap();
        let v: LieVector<i64> = lie_class(&c, 2).unwrap();
        assert_eq!(v.coords.len(), 1);
        assert_eq!(v.get(0), 1);
        // [x1,[x1,y1]] is the Lyndon element x1 x1 y1 itself
        let cc = x.commutator(&c).unwrap();
        let v: LieVector<i64> = lie_class(&cc, 3).unwrap();
        let basis = lyndon_basis(2, 3);
        assert_eq!(basis.word(0), vec![0, 0, 1]);
        assert_eq!(v.coords, BTreeMap::from([(0, 1)]));
        // deeper words have zero class
        let v: LieVector<i64> = lie_class(&cc, 2).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn class_requires_degree() {
        let x = ReducedWord::x(1, Alphabet::Full, 1).unwrap();
        assert!(matches!(lie_class::<i64>(&x, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_lie_polynomial_is_rejected() {
        let mut p = HomogeneousPoly::<i64>::zero(2, 2);
        p.add_term(crate::poly::encode(&[0, 1], 2), &1);
        assert!(matches!(LieVector::from_poly(&p), Err(Error::NotLie(_))));
    }

    #[test]
    fn bracket_examples() {
        let k = 4;
        let x1 = LieVector::<i64>::letter(k, 0);
        let x2 = LieVector::<i64>::letter(k, 1);
        let y1 = LieVector::<i64>::letter(k, 2);
        assert!(bracket(&x1, &x1).unwrap().is_zero());
        let b = bracket(&x1, &y1).unwrap();
        let basis = lyndon_basis(k, 2);
        assert_eq!(b.coords.len(), 1);
        assert_eq!(basis.word(*b.coords.keys().next().unwrap()), vec![0, 2]);
        let jac = bracket(&x1, &bracket(&x2, &y1).unwrap())
            .unwrap()
            .add(&bracket(&x2, &bracket(&y1, &x1).unwrap()).unwrap())
            .add(&bracket(&y1, &bracket(&x1, &x2).unwrap()).unwrap());
        assert!(jac.is_zero());
    }

    #[test]
    fn b_matrix_ranks() {
        let m = map_b_matrix::<BigInt>(2, 3, true);
        assert_eq!(m.shape(), (3, 4));
        assert_eq!(m.cols() - m.rank(), 1);
        let m = map_b_matrix::<BigInt>(2, 1, false);
        assert_eq!(m.shape(), (6, 16));
        assert_eq!(m.cols() - m.rank(), 10);
        // b(x1 (x) x1) = 0: column 0 is zero
        assert!(m.column(0).iter().all(|v| *v == BigInt::from(0)));
    }

    #[test]
    fn filtration_endpoints() {
        for g in 1..=3 {
            for m in 1..=3 {
                let full: Lattice<BigInt> = filtration_lmr(g, m, 0);
                assert_eq!(full.rank(), witt(2 * g, m) as usize);
                let top: Lattice<BigInt> = filtration_lmr(g, m, m);
                assert_eq!(top.rank(), witt(g, m) as usize);
                assert!(filtration_lmr::<BigInt>(g, m, m + 1).is_zero());
                let f_top: Lattice<BigInt> = filtration_fmr(g, m, m + 1);
                assert_eq!(f_top.rank(), g * witt(g, m) as usize);
                assert!(filtration_fmr::<BigInt>(g, m, m + 2).is_zero());
                assert_eq!(
                    filtration_fmr::<BigInt>(g, m, 0).rank(),
                    2 * g * witt(2 * g, m) as usize
                );
            }
        }
    }

    #[test]
    fn fmr_is_decreasing() {
        let g = 2;
        for m in 1..=3 {
            for r in 0..=m + 1 {
                let a: Lattice<BigInt> = filtration_fmr(g, m, r);
                let b: Lattice<BigInt> = filtration_fmr(g, m, r + 1);
                assert!(b.is_subset_of(&a).unwrap());
            }
        }
    }
}
