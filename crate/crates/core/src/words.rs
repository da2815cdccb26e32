//! Free groups on `x_1..x_g` (and optionally `y_1..y_g`): freely reduced
//! words, products, commutators and the two surface boundary words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GenKind {
    X,
    Y,
}

/// A generator `x_i` or `y_i`, 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub index: usize,
}

impl GenSymbol {
    pub fn x(index: usize) -> Self {
        Self {
            kind: GenKind::X,
            index,
        }
    }

    pub fn y(index: usize) -> Self {
        Self {
            kind: GenKind::Y,
            index,
        }
    }

    /// Position in the order `x_1 < .. < x_g < y_1 < .. < y_g`, 0-based.
    pub fn code(self, genus: usize) -> usize {
        match self.kind {
            GenKind::X => self.index - 1,
            GenKind::Y => genus + self.index - 1,
        }
    }

    pub fn from_code(code: usize, genus: usize) -> Self {
        if code < genus {
            Self::x(code + 1)
        } else {
            Self::y(code - genus + 1)
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::X => write!(f, "x{}", self.index),
            GenKind::Y => write!(f, "y{}", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `x_1..x_g, y_1..y_g`: the surface group `F`.
    Full,
    /// `x_1..x_g` only: the free group `F'` on the meridians.
    XOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryConvention {
    /// `[x_1,y_1]...[x_g,y_g]`
    Admissible,
    /// `(x_1...x_g)^-1 (y_1 x_1 y_1^-1 ... y_g x_g y_g^-1)`
    Longitude,
}

/// A freely reduced word.
///
/// Letters are stored as nonzero signed codes: `c > 0` is the generator with
/// 0-based code `c - 1` (see [`GenSymbol::code`]), `-c` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    genus: usize,
    alphabet: Alphabet,
    letters: Vec<i32>,
}

/// Append a letter to a reduced letter stack.
#[inline]
pub(crate) fn push_reduced(out: &mut Vec<i32>, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl ReducedWord {
    pub fn identity(genus: usize, alphabet: Alphabet) -> Self {
        Self {
            genus,
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Builds and freely reduces a word from signed letter codes.
    pub fn from_letters(genus: usize, alphabet: Alphabet, letters: &[i32]) -> Result<Self> {
        let bound = match alphabet {
            Alphabet::Full => 2 * genus,
            Alphabet::XOnly => genus,
        } as i32;
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.abs() > bound {
                return Err(Error::AlphabetMismatch(format!(
                    "letter code {l} outside the alphabet of genus {genus} ({alphabet:?})"
                )));
            }
            push_reduced(&mut out, l);
        }
        Ok(Self {
            genus,
            alphabet,
            letters: out,
        })
    }

    pub(crate) fn from_reduced_unchecked(genus: usize, alphabet: Alphabet, letters: Vec<i32>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        Self {
            genus,
            alphabet,
            letters,
        }
    }

    pub fn generator(genus: usize, alphabet: Alphabet, symbol: GenSymbol) -> Result<Self> {
        if symbol.index == 0 || symbol.index > genus {
            return Err(Error::AlphabetMismatch(format!("{symbol} in genus {genus}")));
        }
        Self::from_letters(genus, alphabet, &[symbol.code(genus) as i32 + 1])
    }

    pub fn x(genus: usize, alphabet: Alphabet, i: usize) -> Result<Self> {
        Self::generator(genus, alphabet, GenSymbol::x(i))
    }

    pub fn y(genus: usize, i: usize) -> Result<Self> {
        Self::generator(genus, Alphabet::Full, GenSymbol::y(i))
    }

    /// Parse whitespace-separated tokens such as `"x1 y2^-1 x1^-1"`.
    pub fn parse(s: &str, genus: usize, alphabet: Alphabet) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in token {tok:?}")))?;
                    (b, e)
                }
                None => (tok, 1),
            };
            let kind = match base.chars().next() {
                Some('x') => GenKind::X,
                Some('y') => GenKind::Y,
                _ => return Err(Error::Parse(format!("bad generator in token {tok:?}"))),
            };
            let index: usize = base[1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in token {tok:?}")))?;
            if index == 0 || index > genus {
                return Err(Error::Parse(format!("index out of range in token {tok:?}")));
            }
            if kind == GenKind::Y && alphabet == Alphabet::XOnly {
                return Err(Error::Parse(format!("y letter {tok:?} in an x-only word")));
            }
            let code = GenSymbol { kind, index }.code(genus) as i32 + 1;
            let l = if exp < 0 { -code } else { code };
            for _ in 0..exp.unsigned_abs() {
                letters.push(l);
            }
        }
        Self::from_letters(genus, alphabet, &letters)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters as `(symbol, exponent)` pairs.
    pub fn symbols(&self) -> impl Iterator<Item = (GenSymbol, i8)> + '_ {
        self.letters.iter().map(|&l| {
            let s = GenSymbol::from_code(l.unsigned_abs() as usize - 1, self.genus);
            (s, if l > 0 { 1 } else { -1 })
        })
    }

    /// Same word regarded in the full surface group.
    pub fn into_full(mut self) -> Self {
        self.alphabet = Alphabet::Full;
        self
    }

    /// Same word regarded in `F'`; fails if it contains a `y` letter.
    pub fn into_x_only(mut self) -> Result<Self> {
        if self.letters.iter().any(|l| l.unsigned_abs() as usize > self.genus) {
            return Err(Error::AlphabetMismatch("word contains y letters".into()));
        }
        self.alphabet = Alphabet::XOnly;
        Ok(self)
    }

    fn check_compatible(&self, other: &Self) -> Result<Alphabet> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        Ok(if self.alphabet == Alphabet::XOnly && other.alphabet == Alphabet::XOnly {
            Alphabet::XOnly
        } else {
            Alphabet::Full
        })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let alphabet = self.check_compatible(other)?;
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Self::from_reduced_unchecked(self.genus, alphabet, out))
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|l| -l).collect();
        Self::from_reduced_unchecked(self.genus, self.alphabet, letters)
    }

    /// `u v u^-1`
    pub fn conjugate(&self, v: &Self) -> Result<Self> {
        self.multiply(v)?.multiply(&self.inverse())
    }

    /// `[u, v] = u v u^-1 v^-1`
    pub fn commutator(&self, v: &Self) -> Result<Self> {
        self.multiply(v)?
            .multiply(&self.inverse())?
            .multiply(&v.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.genus, self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base).expect("same genus");
        }
        out
    }

    /// Exponent sum of each generator, indexed by generator code. This is the
    /// image in `H = Z^{2g}` (or `L = Z^g` for x-only words).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let n = match self.alphabet {
            Alphabet::Full => 2 * self.genus,
            Alphabet::XOnly => self.genus,
        };
        let mut v = vec![0i64; n];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, e) in self.symbols() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e < 0 {
                write!(f, "{s}^-1")?;
            } else {
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

/// The boundary curve of the genus-`g` surface in the given basis convention.
pub fn boundary_word(genus: usize, convention: BoundaryConvention) -> ReducedWord {
    let g = genus;
    let x = |i: usize| i as i32;
    let y = |i: usize| (g + i) as i32;
    let mut letters = Vec::new();
    match convention {
        BoundaryConvention::Admissible => {
            for i in 1..=g {
                letters.extend([x(i), y(i), -x(i), -y(i)]);
            }
        }
        BoundaryConvention::Longitude => {
            for i in (1..=g).rev() {
                letters.push(-x(i));
            }
            for i in 1..=g {
                letters.extend([y(i), x(i), -y(i)]);
            }
        }
    }
    ReducedWord::from_letters(g, Alphabet::Full, &letters).expect("valid letters")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 3, Alphabet::Full).unwrap()
    }

    #[test]
    fn free_reduction_on_multiply() {
        assert_eq!(w("x1 x1^-1").multiply(&w("y2")).unwrap().to_string(), "y2");
    }

    #[test]
    fn commutator_definition() {
        let c = w("x1").commutator(&w("y1")).unwrap();
        assert_eq!(c.to_string(), "x1 y1 x1^-1 y1^-1");
    }

    #[test]
    fn inverse_reverses() {
        assert_eq!(w("x1 y2^-1").inverse().to_string(), "y2 x1^-1");
    }

    #[test]
    fn boundary_words() {
        assert_eq!(
            boundary_word(1, BoundaryConvention::Admissible).to_string(),
            "x1 y1 x1^-1 y1^-1"
        );
        assert_eq!(
            boundary_word(2, BoundaryConvention::Longitude).to_string(),
            "x2^-1 x1^-1 y1 x1 y1^-1 y2 x2 y2^-1"
        );
        assert_eq!(
            boundary_word(2, BoundaryConvention::Admissible).to_string(),
            "x1 y1 x1^-1 y1^-1 x2 y2 x2^-1 y2^-1"
        );
    }

    #[test]
    fn boundary_words_are_homologically_trivial() {
        for g in 1..=4 {
            for conv in [BoundaryConvention::Admissible, BoundaryConvention::Longitude] {
                assert!(boundary_word(g, conv).exponent_sums().iter().all(|&e| e == 0));
            }
        }
    }

    #[test]
    fn genus_mismatch_is_an_error() {
        let a = ReducedWord::parse("x1", 2, Alphabet::Full).unwrap();
        let b = ReducedWord::parse("x1", 3, Alphabet::Full).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::GenusMismatch { .. })));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(ReducedWord::parse("z1", 2, Alphabet::Full).is_err());
        assert!(ReducedWord::parse("x3", 2, Alphabet::Full).is_err());
        assert!(ReducedWord::parse("y1", 2, Alphabet::XOnly).is_err());
        assert!(ReducedWord::parse("", 2, Alphabet::Full).unwrap().is_empty());
    }

    fn arb_word() -> impl Strategy<Value = ReducedWord> {
        prop::collection::vec(prop::sample::select(vec![1, 2, 3, 4, -1, -2, -3, -4]), 0..12)
            .prop_map(|l| ReducedWord::from_letters(2, Alphabet::Full, &l).unwrap())
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_word(), b in arb_word(), c in arb_word()) {
            let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(a.inverse().inverse(), a.clone());
            prop_assert!(a.commutator(&a).unwrap().is_empty());
            let parsed = ReducedWord::parse(&a.to_string(), 2, Alphabet::Full).unwrap();
            prop_assert_eq!(parsed, a);
        }
    }
}
