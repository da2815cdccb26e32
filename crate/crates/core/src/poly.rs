//! Homogeneous elements of the free associative algebra on `k` letters.
//!
//! A monomial of degree `d` is encoded as the base-`k` number formed by its
//! letters, so for a fixed degree the numeric order is the lexicographic order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

pub type Monomial = u64;

/// Letters of a monomial code, most significant first.
pub fn decode(code: Monomial, degree: usize, alphabet: usize) -> Vec<u8> {
    let k = alphabet as u64;
    let mut out = vec![0u8; degree];
    let mut c = code;
    for slot in out.iter_mut().rev() {
        *slot = (c % k) as u8;
        c /= k;
    }
    out
}

pub fn encode(letters: &[u8], alphabet: usize) -> Monomial {
    let k = alphabet as u64;
    letters.iter().fold(0, |acc, &l| acc * k + l as u64)
}

/// `alphabet^degree`, panicking if it does not fit in a monomial code.
pub fn monomial_count(alphabet: usize, degree: usize) -> u64 {
    (alphabet as u64)
        .checked_pow(degree as u32)
        .expect("monomial space too large to encode")
}

/// Number of letters in `monomial` with code below `threshold` (the x letters
/// when `threshold = g`).
pub fn count_below(code: Monomial, degree: usize, alphabet: usize, threshold: usize) -> usize {
    decode(code, degree, alphabet)
        .into_iter()
        .filter(|&l| (l as usize) < threshold)
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousPoly<T> {
    pub alphabet: usize,
    pub degree: usize,
    pub terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> HomogeneousPoly<T> {
    pub fn zero(alphabet: usize, degree: usize) -> Self {
        Self {
            alphabet,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn letter(alphabet: usize, letter: usize) -> Self {
        let mut p = Self::zero(alphabet, 1);
        p.terms.insert(letter as Monomial, T::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: &T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(T::zero);
        entry.add_assign_ref(c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &T) {
        debug_assert_eq!(self.degree, other.degree);
        for (m, c) in &other.terms {
            self.add_term(*m, &c.mul_ref(factor));
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

    pub fn scale(&self, factor: &T) -> Self {
        let mut out = Self::zero(self.alphabet, self.degree);
        out.add_scaled(self, factor);
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let shift = monomial_count(self.alphabet, other.degree);
        let mut out = Self::zero(self.alphabet, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a * shift + b, &ca.mul_ref(cb));
            }
        }
        out
    }

    /// Commutator `self * other - other * self`.
    pub fn lie_bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Lexicographically smallest monomial with nonzero coefficient.
    pub fn leading(&self) -> Option<(Monomial, &T)> {
        self.terms.iter().next().map(|(m, c)| (*m, c))
    }

    pub fn convert<U: Scalar>(&self) -> HomogeneousPoly<U> {
        HomogeneousPoly {
            alphabet: self.alphabet,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, c.convert())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_roundtrip() {
        let letters = vec![2u8, 0, 5, 1];
        let c = encode(&letters, 6);
        assert_eq!(decode(c, 4, 6), letters);
        assert_eq!(count_below(c, 4, 6, 3), 3);
    }

    #[test]
    fn bracket_of_letters() {
        let x = HomogeneousPoly::<i64>::letter(2, 0);
        let y = HomogeneousPoly::<i64>::letter(2, 1);
        let b = x.lie_bracket(&y);
        assert_eq!(b.terms.get(&encode(&[0, 1], 2)), Some(&1));
        assert_eq!(b.terms.get(&encode(&[1, 0], 2)), Some(&-1));
        assert!(x.lie_bracket(&x).is_zero());
    }
}
