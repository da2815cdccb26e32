//! Truncated Magnus expansion `z -> 1 + Z` into the free associative algebra,
//! and the lower-central-series degree it detects.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{monomial_count, HomogeneousPoly, Monomial};
use crate::scalar::Scalar;
use crate::words::{Alphabet, ReducedWord};

/// Largest number of dense coefficients an expansion may allocate.
pub const DENSE_BUDGET: u64 = 1 << 22;

/// Element of the free associative algebra truncated above degree `cutoff`.
/// Degree `d` terms live in `components[d]`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries<T> {
    alphabet: usize,
    cutoff: usize,
    components: Vec<BTreeMap<Monomial, T>>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn one(alphabet: usize, cutoff: usize) -> Self {
        let mut components = vec![BTreeMap::new(); cutoff + 1];
        components[0].insert(0, T::one());
        Self {
            alphabet,
            cutoff,
            components,
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coefficient(&self, letters: &[u8]) -> T {
        if letters.len() > self.cutoff {
            return T::zero();
        }
        let code = crate::poly::encode(letters, self.alphabet);
        self.components[letters.len()]
            .get(&code)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Homogeneous part of the given degree.
    pub fn component(&self, degree: usize) -> HomogeneousPoly<T> {
        HomogeneousPoly {
            alphabet: self.alphabet,
            degree,
            terms: self.components.get(degree).cloned().unwrap_or_default(),
        }
    }

    /// Iterate `(degree, monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Monomial, &T)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(d, c)| c.iter().map(move |(m, v)| (d, *m, v)))
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet || self.cutoff != other.cutoff {
            return Err(Error::Precondition(
                "series with different alphabets or cutoffs".into(),
            ));
        }
        let n = self.cutoff;
        let mut out = Self {
            alphabet: self.alphabet,
            cutoff: n,
            components: vec![BTreeMap::new(); n + 1],
        };
        for (da, ca) in self.components.iter().enumerate() {
            for (db, cb) in other.components.iter().enumerate().take(n + 1 - da) {
                let shift = monomial_count(self.alphabet, db);
                for (a, va) in ca {
                    for (b, vb) in cb {
                        let m = a * shift + b;
                        let slot = out.components[da + db].entry(m).or_insert_with(T::zero);
                        slot.add_assign_ref(&va.mul_ref(vb));
                    }
                }
            }
        }
        for c in &mut out.components {
            c.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    /// Smallest positive degree carrying a nonzero term.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        (1..=self.cutoff).find(|&d| !self.components[d].is_empty())
    }
}

/// Alphabet size of the free group a word lives in.
pub fn alphabet_size(w: &ReducedWord) -> usize {
    match w.alphabet() {
        Alphabet::Full => 2 * w.genus(),
        Alphabet::XOnly => w.genus(),
    }
}

fn check_budget(alphabet: usize, cutoff: usize) -> Result<()> {
    let mut total: u64 = 0;
    for d in 0..=cutoff {
        let c = (alphabet as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        total = total.saturating_add(c);
    }
    if total > DENSE_BUDGET {
        return Err(Error::Budget(format!(
            "Magnus expansion over {alphabet} letters to degree {cutoff} needs {total} coefficients"
        )));
    }
    Ok(())
}

/// Dense working storage: `levels[d]` holds all `alphabet^d` coefficients.
fn dense_expand<T: Scalar>(letters: &[i32], alphabet: usize, cutoff: usize) -> Vec<Vec<T>> {
    let k = alphabet;
    let mut levels: Vec<Vec<T>> = (0..=cutoff)
        .map(|d| vec![T::zero(); monomial_count(k, d) as usize])
        .collect();
    levels[0][0] = T::one();
    for &l in letters {
        let c = l.unsigned_abs() as usize - 1;
        if l > 0 {
            // S <- S (1 + Z)
            for d in (1..=cutoff).rev() {
                let (lo, hi) = levels.split_at_mut(d);
                let prev = &lo[d - 1];
                let cur = &mut hi[0];
                for (m, v) in prev.iter().enumerate() {
                    if !v.is_zero() {
                        cur[m * k + c].add_assign_ref(v);
                    }
                }
            }
        } else {
            // S <- S (1 + Z)^-1, solved degree by degree from the bottom
            for d in 1..=cutoff {
                let (lo, hi) = levels.split_at_mut(d);
                let prev = &lo[d - 1];
                let cur = &mut hi[0];
                for (m, v) in prev.iter().enumerate() {
                    if !v.is_zero() {
                        cur[m * k + c].sub_assign_ref(v);
                    }
                }
            }
        }
    }
    levels
}

/// Image of `w` under `z -> 1 + Z`, `z^-1 -> 1 - Z + Z^2 - ...`, truncated
/// above degree `cutoff`.
pub fn magnus_expand<T: Scalar>(w: &ReducedWord, cutoff: usize) -> Result<TruncatedSeries<T>> {
    if cutoff == 0 {
        return Err(Error::Precondition("cutoff must be at least 1".into()));
    }
    let k = alphabet_size(w);
    check_budget(k, cutoff)?;
    let levels = dense_expand::<T>(w.letters(), k, cutoff);
    let components = levels
        .into_iter()
        .map(|lvl| {
            lvl.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(m, v)| (m as Monomial, v))
                .collect()
        })
        .collect();
    Ok(TruncatedSeries {
        alphabet: k,
        cutoff,
        components,
    })
}

/// Position of a word in the lower central series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordDegree {
    Identity,
    /// `w` lies in `F_n` but not in `F_{n+1}`.
    Exact(usize),
    /// `w` lies in `F_n` for every `n` up to this bound (cutoff + 1).
    AtLeast(usize),
}

impl WordDegree {
    /// Lower bound on the degree (`usize::MAX` for the identity).
    pub fn lower_bound(self) -> usize {
        match self {
            WordDegree::Identity => usize::MAX,
            WordDegree::Exact(n) | WordDegree::AtLeast(n) => n,
        }
    }

    pub fn is_at_least(self, n: usize) -> bool {
        self.lower_bound() >= n
    }
}

impl fmt::Display for WordDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordDegree::Identity => write!(f, "identity"),
            WordDegree::Exact(n) => write!(f, "{n}"),
            WordDegree::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// Largest `n` with `w` in `F_n`, detected up to `cutoff`.
pub fn word_degree(w: &ReducedWord, cutoff: usize) -> Result<WordDegree> {
    if w.is_empty() {
        return Ok(WordDegree::Identity);
    }
    let s = magnus_expand::<i128>(w, cutoff)?;
    Ok(match s.lowest_nonconstant_degree() {
        Some(d) => WordDegree::Exact(d),
        None => WordDegree::AtLeast(cutoff + 1),
    })
}
