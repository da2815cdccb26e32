//! Lyndon words, their standard bracketings and Witt numbers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::poly::{decode, encode, monomial_count, HomogeneousPoly, Monomial};

/// `(1/n) sum_{d | n} mu(d) k^{n/d}`
pub fn witt(k: usize, n: usize) -> u64 {
    assert!(k >= 1 && n >= 1, "witt requires k >= 1 and n >= 1");
    let mut total: i128 = 0;
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let p = (k as i128)
            .checked_pow((n / d) as u32)
            .expect("witt number overflow");
        total += mu as i128 * p;
    }
    (total / n as i128) as u64
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// All Lyndon words of length exactly `n` over `0..k`, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // extend periodically to length n
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        // strip maximal letters, then increment
        while let Some(&last) = w.last() {
            if last as usize == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    assert!(w.len() >= 2, "letters have no factorization");
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter suffix is always Lyndon");
    (&w[..split], &w[split..])
}

/// Lyndon basis of the degree-`n` part of the free Lie algebra on `k` letters.
#[derive(Debug)]
pub struct LyndonBasis {
    alphabet: usize,
    degree: usize,
    codes: Vec<Monomial>,
    expansions: Mutex<HashMap<Monomial, Arc<HomogeneousPoly<i64>>>>,
}

impl LyndonBasis {
    fn build(alphabet: usize, degree: usize) -> Self {
        // guard the encoding
        let _ = monomial_count(alphabet, degree);
        let codes = lyndon_words(alphabet, degree)
            .iter()
            .map(|w| encode(w, alphabet))
            .collect();
        Self {
            alphabet,
            degree,
            codes,
            expansions: Mutex::new(HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[Monomial] {
        &self.codes
    }

    pub fn index_of(&self, code: Monomial) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    pub fn word(&self, i: usize) -> Vec<u8> {
        decode(self.codes[i], self.degree, self.alphabet)
    }

    /// Associative expansion of the standard bracketing of element `i`.
    pub fn expansion(&self, i: usize) -> Arc<HomogeneousPoly<i64>> {
        self.expansion_of_code(self.codes[i])
    }

    pub(crate) fn expansion_of_code(&self, code: Monomial) -> Arc<HomogeneousPoly<i64>> {
        if let Some(p) = self.expansions.lock().expect("poisoned").get(&code) {
            return p.clone();
        }
        let word = decode(code, self.degree, self.alphabet);
        let p = Arc::new(bracketing_expansion(&word, self.alphabet));
        self.expansions
            .lock()
            .expect("poisoned")
            .insert(code, p.clone());
        p
    }

    /// Bracketing of element `i` written with the given letter names.
    pub fn bracketing(&self, i: usize, names: &dyn Fn(u8) -> String) -> String {
        bracketing_string(&self.word(i), names)
    }
}

pub fn bracketing_expansion(word: &[u8], alphabet: usize) -> HomogeneousPoly<i64> {
    if word.len() == 1 {
        return HomogeneousPoly::letter(alphabet, word[0] as usize);
    }
    let (u, v) = standard_factorization(word);
    let pu = bracketing_expansion(u, alphabet);
    let pv = bracketing_expansion(v, alphabet);
    pu.lie_bracket(&pv)
}

fn bracketing_string(word: &[u8], names: &dyn Fn(u8) -> String) -> String {
    if word.len() == 1 {
        return names(word[0]);
    }
    let (u, v) = standard_factorization(word);
    format!(
        "[{},{}]",
        bracketing_string(u, names),
        bracketing_string(v, names)
    )
}

type BasisCache = Mutex<HashMap<(usize, usize), Arc<LyndonBasis>>>;

/// Shared, lazily built basis for `(alphabet, degree)`.
pub fn lyndon_basis(alphabet: usize, degree: usize) -> Arc<LyndonBasis> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("poisoned").get(&(alphabet, degree)) {
        return b.clone();
    }
    let b = Arc::new(LyndonBasis::build(alphabet, degree));
    cache
        .lock()
        .expect("poisoned")
        .entry((alphabet, degree))
        .or_insert(b)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_witt_numbers() {
        assert_eq!(witt(2, 1), 2);
        assert_eq!(witt(2, 3), 2);
        assert_eq!(witt(3, 3), 8);
        assert_eq!(witt(4, 2), 6);
        assert_eq!(witt(1, 3), 0);
    }

    #[test]
    fn duval_matches_definition() {
        for k in 1..=3 {
            for n in 1..=5 {
                let words = lyndon_words(k, n);
                assert!(words.iter().all(|w| is_lyndon(w)));
                assert!(words.windows(2).all(|p| p[0] < p[1]));
                assert_eq!(words.len() as u64, witt(k, n));
            }
        }
        assert_eq!(lyndon_words(2, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(standard_factorization(&[0, 0, 1]), (&[0u8][..], &[0u8, 1][..]));
        assert_eq!(standard_factorization(&[0, 1, 1]), (&[0u8, 1][..], &[1u8][..]));
        assert_eq!(
            standard_factorization(&[0, 0, 1, 0, 1]),
            (&[0u8, 0, 1][..], &[0u8, 1][..])
        );
    }

    #[test]
    fn leading_monomial_is_the_word() {
        for n in 1..=5 {
            let b = lyndon_basis(3, n);
            for i in 0..b.len() {
                let p = b.expansion(i);
                let (m, c) = p.leading().unwrap();
                assert_eq!(m, b.codes()[i]);
                assert_eq!(*c, 1);
            }
        }
    }
}
