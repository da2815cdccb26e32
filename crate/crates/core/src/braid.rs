//! Framed pure braids acting on the free group `F' = <x_1..x_g>` of the
//! punctured disk, and their two embeddings into the surface mapping class
//! group.
//!
//! A pure braid sends `x_i` to `l_i x_i l_i^-1` with
//! `l_1 x_1 l_1^-1 ... l_g x_g l_g^-1 = x_1 ... x_g`. The conjugator is only
//! defined up to powers of `x_i` on the right; we store it normalized to have
//! `x_i`-exponent zero, and the framing `s_i` separately. The framed
//! longitude is `l_i x_i^{s_i}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{eta_preimage, theta, Space, TensorWedge, WedgeVector};
use crate::lattice::Matrix;
use crate::lie::{lie_class, lyndon_basis, standard_factorization, witt, LieVector};
use crate::magnus::{word_degree, WordDegree};
use crate::mcg::FreeEndo;
use crate::words::{push_reduced, Alphabet, BoundaryConvention, GenSymbol, ReducedWord};
use crate::Int;

/// Automorphism of `F'` by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Auto {
    genus: usize,
    images: Vec<ReducedWord>,
}

impl Auto {
    fn identity(g: usize) -> Self {
        Self {
            genus: g,
            images: (1..=g).map(|i| xw(g, i)).collect(),
        }
    }

    fn apply(&self, w: &ReducedWord) -> ReducedWord {
        let mut out = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &c in img.letters() {
                    push_reduced(&mut out, c);
                }
            } else {
                for &c in img.letters().iter().rev() {
                    push_reduced(&mut out, -c);
                }
            }
        }
        ReducedWord::from_reduced_unchecked(self.genus, Alphabet::XOnly, out)
    }

    /// `self o other`
    fn compose(&self, other: &Self) -> Self {
        Self {
            genus: self.genus,
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    /// Artin generator `sigma_k` (`k` 1-based) or its inverse.
    fn sigma(g: usize, k: usize, inverse: bool) -> Self {
        let mut a = Self::identity(g);
        let (xk, xk1) = (xw(g, k), xw(g, k + 1));
        if inverse {
            a.images[k - 1] = xk.conjugate(&xk1).expect("same genus");
            a.images[k] = xk;
        } else {
            a.images[k - 1] = xk1.clone();
            a.images[k] = xk1.inverse().conjugate(&xk).expect("same genus");
        }
        a
    }
}

fn xw(g: usize, i: usize) -> ReducedWord {
    ReducedWord::x(g, Alphabet::XOnly, i).expect("valid generator")
}

/// Normalized longitudes and framings of a framed pure braid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Longitudes {
    pub lambdas: Vec<ReducedWord>,
    pub framings: Vec<i64>,
}

impl Longitudes {
    fn identity(g: usize) -> Self {
        Self {
            lambdas: vec![ReducedWord::identity(g, Alphabet::XOnly); g],
            framings: vec![0; g],
        }
    }

    fn framed(&self, i: usize) -> ReducedWord {
        let g = self.lambdas.len();
        self.lambdas[i]
            .multiply(&xw(g, i + 1).pow(self.framings[i]))
            .expect("same genus")
    }

    /// Split a framed longitude of strand `i` into `(lambda, s)`.
    fn normalize(g: usize, i: usize, framed: &ReducedWord) -> (ReducedWord, i64) {
        let s = framed.exponent_sums()[i];
        let l = framed.multiply(&xw(g, i + 1).pow(-s)).expect("same genus");
        (l, s)
    }

    fn from_framed(g: usize, framed: &[ReducedWord]) -> Self {
        let (lambdas, framings) = framed
            .iter()
            .enumerate()
            .map(|(i, w)| Self::normalize(g, i, w))
            .unzip();
        Self { lambdas, framings }
    }

    fn action(&self) -> Auto {
        let g = self.lambdas.len();
        Auto {
            genus: g,
            images: (0..g)
                .map(|i| self.lambdas[i].conjugate(&xw(g, i + 1)).expect("same genus"))
                .collect(),
        }
    }

    /// Longitudes of the composite `phi_self o phi_other`.
    fn compose(&self, other: &Self) -> Self {
        let g = self.lambdas.len();
        let act = self.action();
        let framed: Vec<ReducedWord> = (0..g)
            .map(|i| {
                act.apply(&other.framed(i))
                    .multiply(&self.framed(i))
                    .expect("same genus")
            })
            .collect();
        Self::from_framed(g, &framed)
    }

    fn check(&self) -> Result<()> {
        let g = self.lambdas.len();
        let act = self.action();
        let mut lhs = ReducedWord::identity(g, Alphabet::XOnly);
        let mut rhs = ReducedWord::identity(g, Alphabet::XOnly);
        for i in 0..g {
            lhs = lhs.multiply(&act.images[i])?;
            rhs = rhs.multiply(&xw(g, i + 1))?;
        }
        if lhs != rhs {
            return Err(Error::Invariant(format!(
                "longitude equation fails: {lhs} != {rhs}"
            )));
        }
        Ok(())
    }
}

/// A framed pure braid on `g` strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureBraid {
    strands: usize,
    forward: Longitudes,
    backward: Option<Longitudes>,
}

impl PureBraid {
    pub fn identity(g: usize) -> Self {
        Self {
            strands: g,
            forward: Longitudes::identity(g),
            backward: Some(Longitudes::identity(g)),
        }
    }

    /// From explicit longitudes (any `x_i` power on the right of `l_i` is
    /// folded into the framing, which `framings` then adds to).
    pub fn from_longitudes(g: usize, lambdas: &[ReducedWord], framings: &[i64]) -> Result<Self> {
        if lambdas.len() != g || framings.len() != g {
            return Err(Error::Precondition(format!(
                "need {g} longitudes and {g} framings"
            )));
        }
        let mut framed = Vec::with_capacity(g);
        for (i, l) in lambdas.iter().enumerate() {
            if l.genus() != g {
                return Err(Error::GenusMismatch {
                    left: g,
                    right: l.genus(),
                });
            }
            let l = l.clone().into_x_only()?;
            framed.push(l.multiply(&xw(g, i + 1).pow(framings[i]))?);
        }
        let forward = Longitudes::from_framed(g, &framed);
        forward.check()?;
        let b = Self {
            strands: g,
            forward,
            backward: None,
        };
        b.linking_matrix()?;
        Ok(b)
    }

    /// Pure braid with zero longitudes and the given framings.
    pub fn framing(framings: &[i64]) -> Self {
        let g = framings.len();
        let mut f = Longitudes::identity(g);
        f.framings = framings.to_vec();
        let mut b = Longitudes::identity(g);
        b.framings = framings.iter().map(|s| -s).collect();
        Self {
            strands: g,
            forward: f,
            backward: Some(b),
        }
    }

    fn from_autos(g: usize, fwd: &Auto, bwd: &Auto) -> Result<Self> {
        Ok(Self {
            strands: g,
            forward: extract_longitudes(fwd)?,
            backward: Some(extract_longitudes(bwd)?),
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn longitudes(&self) -> &[ReducedWord] {
        &self.forward.lambdas
    }

    pub fn framings(&self) -> &[i64] {
        &self.forward.framings
    }

    /// `l_i x_i^{s_i}`, `i` 0-based.
    pub fn framed_longitude(&self, i: usize) -> ReducedWord {
        self.forward.framed(i)
    }

    pub fn has_inverse(&self) -> bool {
        self.backward.is_some()
    }

    /// Image of `x_i` (1-based) under the braid action on `F'`.
    pub fn action_on(&self, w: &ReducedWord) -> ReducedWord {
        self.forward.action().apply(w)
    }

    /// Product `alpha beta`, acting as `phi_alpha o phi_beta`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::GenusMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let forward = self.forward.compose(&other.forward);
        forward.check()?;
        let backward = match (&self.backward, &other.backward) {
            (Some(a), Some(b)) => Some(b.compose(a)),
            _ => None,
        };
        Ok(Self {
            strands: self.strands,
            forward,
            backward,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let b = self
            .backward
            .clone()
            .ok_or_else(|| Error::NoInverse("braid given without an inverse".into()))?;
        Ok(Self {
            strands: self.strands,
            forward: b,
            backward: Some(self.forward.clone()),
        })
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?
            .compose(&self.inverse()?)?
            .compose(&other.inverse()?)
    }

    pub fn is_identity(&self) -> bool {
        self.forward == Longitudes::identity(self.strands)
    }

    /// `a_ij` = `x_j`-exponent sum of `l_i`, `a_ii = s_i`.
    pub fn linking_matrix(&self) -> Result<Matrix<Int>> {
        let g = self.strands;
        let mut a = Matrix::zeros(g, g);
        for i in 0..g {
            let e = self.forward.lambdas[i].exponent_sums();
            for j in 0..g {
                a[(i, j)] = Int::from(if i == j { self.forward.framings[i] } else { e[j] });
            }
        }
        if a != a.transpose() {
            return Err(Error::Invariant("linking matrix is not symmetric".into()));
        }
        Ok(a)
    }

    pub fn to_json(&self) -> BraidJson {
        BraidJson {
            strands: self.strands,
            word: None,
            longitudes: Some(self.forward.lambdas.iter().map(|w| w.to_string()).collect()),
            framings: Some(self.forward.framings.clone()),
        }
    }

    pub fn from_json(j: &BraidJson) -> Result<Self> {
        let g = j.strands;
        let framings = j.framings.clone().unwrap_or_else(|| vec![0; g]);
        if framings.len() != g {
            return Err(Error::Parse(format!("need {g} framings")));
        }
        match (&j.word, &j.longitudes) {
            (Some(w), None) => parse_braid_word(g, w)?.compose(&Self::framing(&framings)),
            (None, Some(ls)) => {
                let lambdas = ls
                    .iter()
                    .map(|s| ReducedWord::parse(s, g, Alphabet::XOnly))
                    .collect::<Result<Vec<_>>>()?;
                Self::from_longitudes(g, &lambdas, &framings)
            }
            _ => Err(Error::Parse(
                "braid needs exactly one of \"word\" and \"longitudes\"".into(),
            )),
        }
    }
}

/// Serialized braid: either a word in the generators `Aij` or explicit
/// longitudes, plus optional framings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidJson {
    pub strands: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub longitudes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framings: Option<Vec<i64>>,
}

/// Parse `"A12 A13^-1"` (or `"A1_12"` when an index has several digits).
pub fn parse_braid_word(g: usize, s: &str) -> Result<PureBraid> {
    let mut out = PureBraid::identity(g);
    for tok in s.split_whitespace() {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        let digits = base
            .strip_prefix('A')
            .ok_or_else(|| Error::Parse(format!("bad braid generator {tok:?}")))?;
        let (i, j) = match digits.split_once('_') {
            Some((a, b)) => (a, b),
            None if digits.len() == 2 => digits.split_at(1),
            None => return Err(Error::Parse(format!("ambiguous braid generator {tok:?}"))),
        };
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index in {tok:?}")))
        };
        let a = artin_generator(g, parse(i)?, parse(j)?)
            .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?;
        let a = if exp < 0 { a.inverse()? } else { a };
        for _ in 0..exp.unsigned_abs() {
            out = out.compose(&a)?;
        }
    }
    Ok(out)
}

/// Recover normalized longitudes from an automorphism of `F'` that sends
/// each `x_i` to a conjugate of itself.
fn extract_longitudes(a: &Auto) -> Result<Longitudes> {
    let g = a.genus;
    let mut framed = Vec::with_capacity(g);
    for (i, w) in a.images.iter().enumerate() {
        let l = w.letters();
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == -l[l.len() - 1 - k] {
            k += 1;
        }
        if l.len() != 2 * k + 1 || l[k] != (i + 1) as i32 {
            return Err(Error::Invariant(format!(
                "image {w} of x{} is not a conjugate of it",
                i + 1
            )));
        }
        framed.push(ReducedWord::from_letters(g, Alphabet::XOnly, &l[..k])?);
    }
    // the conjugator only determines the longitude up to powers of x_i;
    // braids built from the action carry zero framing
    let mut out = Longitudes::from_framed(g, &framed);
    out.framings = vec![0; g];
    out.check()?;
    Ok(out)
}

/// The generator `A_ij` (`1 <= i < j <= g`) of the pure braid group.
pub fn artin_generator(g: usize, i: usize, j: usize) -> Result<PureBraid> {
    if !(1 <= i && i < j && j <= g) {
        return Err(Error::Precondition(format!(
            "A{i}{j} needs 1 <= i < j <= {g}"
        )));
    }
    // sigma_{j-1} .. sigma_{i+1} sigma_i^2 sigma_{i+1}^-1 .. sigma_{j-1}^-1
    let mut fwd = Auto::identity(g);
    let mut bwd = Auto::identity(g);
    for k in (i + 1..j).rev() {
        fwd = fwd.compose(&Auto::sigma(g, k, false));
        bwd = bwd.compose(&Auto::sigma(g, k, false));
    }
    let sq = Auto::sigma(g, i, false).compose(&Auto::sigma(g, i, false));
    let sq_inv = Auto::sigma(g, i, true).compose(&Auto::sigma(g, i, true));
    fwd = fwd.compose(&sq);
    bwd = bwd.compose(&sq_inv);
    for k in i + 1..j {
        fwd = fwd.compose(&Auto::sigma(g, k, true));
        bwd = bwd.compose(&Auto::sigma(g, k, true));
    }
    PureBraid::from_autos(g, &fwd, &bwd)
}

/// `psi(a)`: `x_i -> l x_i l^-1`, `y_i -> y_i l^-1` with `l` the framed
/// longitude; preserves the longitude boundary word.
pub fn psi(a: &PureBraid) -> Result<FreeEndo> {
    fn images(b: &PureBraid) -> Vec<ReducedWord> {
        let g = b.strands;
        let mut v = Vec::with_capacity(2 * g);
        let framed: Vec<ReducedWord> = (0..g).map(|i| b.framed_longitude(i).into_full()).collect();
        for (i, l) in framed.iter().enumerate() {
            v.push(l.conjugate(&xw(g, i + 1).into_full()).expect("same genus"));
        }
        for (i, l) in framed.iter().enumerate() {
            let y = ReducedWord::y(g, i + 1).expect("valid generator");
            v.push(y.multiply(&l.inverse()).expect("same genus"));
        }
        v
    }
    let inverse = match a.inverse() {
        Ok(b) => Some(images(&b)),
        Err(_) => None,
    };
    FreeEndo::with_trusted_inverse(a.strands, BoundaryConvention::Longitude, images(a), inverse)
}

/// The homomorphism `F' -> F`, `x_i -> [x_i, y_i]`.
pub fn delta(w: &ReducedWord) -> ReducedWord {
    let g = w.genus();
    let mut out = Vec::with_capacity(4 * w.len());
    for &l in w.letters() {
        let (x, y) = (l.abs(), l.abs() + g as i32);
        let block = if l > 0 { [x, y, -x, -y] } else { [y, x, -y, -x] };
        for c in block {
            push_reduced(&mut out, c);
        }
    }
    ReducedWord::from_reduced_unchecked(g, Alphabet::Full, out)
}

/// `kappa(a)`: conjugate `x_i` and `y_i` by `delta` of the framed longitude;
/// preserves the admissible boundary word.
pub fn kappa(a: &PureBraid) -> Result<FreeEndo> {
    fn images(b: &PureBraid) -> Vec<ReducedWord> {
        let g = b.strands;
        let d: Vec<ReducedWord> = (0..g).map(|i| delta(&b.framed_longitude(i))).collect();
        let mut v = Vec::with_capacity(2 * g);
        for (i, di) in d.iter().enumerate() {
            v.push(di.conjugate(&xw(g, i + 1).into_full()).expect("same genus"));
        }
        for (i, di) in d.iter().enumerate() {
            let y = ReducedWord::y(g, i + 1).expect("valid generator");
            v.push(di.conjugate(&y).expect("same genus"));
        }
        v
    }
    let inverse = match a.inverse() {
        Ok(b) => Some(images(&b)),
        Err(_) => None,
    };
    FreeEndo::with_trusted_inverse(a.strands, BoundaryConvention::Admissible, images(a), inverse)
}

/// Largest `n` with every framed longitude in `F'_n`, detected up to `cutoff`.
pub fn braid_weight_degree(a: &PureBraid, cutoff: usize) -> Result<WordDegree> {
    let mut best = WordDegree::Identity;
    for i in 0..a.strands {
        let d = word_degree(&a.framed_longitude(i), cutoff)?;
        let better = match (best, d) {
            (_, WordDegree::Identity) => false,
            (WordDegree::Identity, _) => true,
            (b, d) if d.lower_bound() < b.lower_bound() => true,
            (WordDegree::AtLeast(x), WordDegree::Exact(y)) => x == y,
            _ => false,
        };
        if better {
            best = d;
        }
    }
    Ok(best)
}

/// `J_b(a) in Lambda^3 L` for a braid whose longitudes lie in `F'_2`:
/// the `eta`-preimage of `sum_i x_i (x) l_i`, `l_i` the class of the
/// longitude in `Lambda^2 L`.
pub fn j_b(a: &PureBraid) -> Result<WedgeVector<Int>> {
    let g = a.strands;
    let mut t = TensorWedge::zero(Space::L(g));
    for i in 0..g {
        let l = a.framed_longitude(i);
        let v: LieVector<Int> = match lie_class::<i128>(&l, 2) {
            Ok(v) => v.convert(),
            Err(Error::Precondition(_)) => {
                return Err(Error::Precondition(
                    "braid is not in the second lower central series term".into(),
                ))
            }
            Err(e) => return Err(e),
        };
        let basis = v.basis();
        for (k, c) in &v.coords {
            let w = basis.word(*k);
            t.add_term(i, w[0] as usize, w[1] as usize, c);
        }
    }
    if !theta(&t).is_zero() {
        return Err(Error::Invariant("bracket image of J_b is nonzero".into()));
    }
    eta_preimage(&t)
}

/// The group word realizing the standard bracketing of a Lyndon word.
pub fn lyndon_group_word(g: usize, word: &[u8], alphabet: Alphabet) -> ReducedWord {
    if word.len() == 1 {
        return ReducedWord::from_letters(g, alphabet, &[word[0] as i32 + 1]).expect("valid letter");
    }
    let (u, v) = standard_factorization(word);
    lyndon_group_word(g, u, alphabet)
        .commutator(&lyndon_group_word(g, v, alphabet))
        .expect("same genus")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRankReport {
    pub genus: usize,
    pub degree: usize,
    pub rank: usize,
    pub witt: u64,
    pub injective: bool,
    /// Leading monomials of the images increase with the Lyndon order.
    pub order_preserved: bool,
}

/// Rank of `delta_*: F'_n/F'_{n+1} -> F_{2n}/F_{2n+1}` on the Lyndon basis.
pub fn delta_star_rank(g: usize, n: usize, cutoff: usize) -> Result<DeltaRankReport> {
    if 2 * n > cutoff {
        return Err(Error::Precondition(format!(
            "degree {} exceeds the cutoff {cutoff}",
            2 * n
        )));
    }
    let basis = lyndon_basis(g, n);
    let mut rows = Vec::with_capacity(basis.len());
    let mut leads = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let w = lyndon_group_word(g, &basis.word(i), Alphabet::XOnly);
        let v = lie_class::<i128>(&delta(&w), 2 * n)?;
        leads.push(v.to_poly().leading().map(|(m, _)| m));
        rows.push(v.convert::<Int>().to_dense());
    }
    let width = lyndon_basis(2 * g, 2 * n).len();
    let m = Matrix::from_rows(width, rows)?;
    let rank = m.rank();
    let w = witt(g, n);
    let order_preserved = leads.iter().all(|l| l.is_some()) && leads.windows(2).all(|p| p[0] < p[1]);
    Ok(DeltaRankReport {
        genus: g,
        degree: n,
        rank,
        witt: w,
        injective: rank as u64 == w,
        order_preserved,
    })
}

/// Rank of `(P_g)_n / (P_g)_{n+1}`: `r(g,n) = r(g-1,n) + W_n(g-1)`, with
/// `g` added at `n = 1` for the framed group.
pub fn rank_r(g: usize, n: usize, framed: bool) -> u64 {
    assert!(n >= 1, "degree must be positive");
    let base: u64 = (1..g).map(|k| witt(k, n)).sum();
    if framed && n == 1 {
        base + g as u64
    } else {
        base
    }
}

/// Left-normed iterated commutator `[[..[b_1, b_2], ..], b_k]`.
pub fn iterated_commutator(items: &[PureBraid]) -> Result<PureBraid> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::Precondition("empty commutator".into()))?;
    let mut acc = first.clone();
    for b in rest {
        acc = acc.commutator(b)?;
    }
    Ok(acc)
}

/// All Artin generators `A_ij` for `g` strands, keyed by `(i, j)`.
pub fn artin_generators(g: usize) -> Result<BTreeMap<(usize, usize), PureBraid>> {
    let mut out = BTreeMap::new();
    for i in 1..=g {
        for j in i + 1..=g {
            out.insert((i, j), artin_generator(g, i, j)?);
        }
    }
    Ok(out)
}

/// `GenSymbol` names for `F'`.
pub fn meridian_name(i: usize) -> String {
    GenSymbol::x(i).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xword(g: usize, s: &str) -> ReducedWord {
        ReducedWord::parse(s, g, Alphabet::XOnly).unwrap()
    }

    #[test]
    fn braid_inverses_pass_the_full_witness_check() {
        let g = 3;
        let a = artin_generator(g, 1, 2).unwrap();
        let b = artin_generator(g, 2, 3).unwrap();
        for x in [a.clone(), a.commutator(&b).unwrap()] {
            for f in [psi(&x).unwrap(), kappa(&x).unwrap()] {
                let inv = f.inverse_images().map(|v| v.to_vec());
                assert!(FreeEndo::new(g, f.boundary(), f.images().to_vec(), inv).is_ok());
            }
        }
    }

    #[test]
    fn a12_longitudes() {
        let a = artin_generator(2, 1, 2).unwrap();
        assert_eq!(a.longitudes()[0], xword(2, "x2^-1"));
        assert_eq!(a.longitudes()[1], xword(2, "x2^-1 x1^-1 x2"));
        let l = a.linking_matrix().unwrap();
        assert_eq!(l, Matrix::from_i64_rows(&[&[0, -1], &[-1, 0]]));
    }

    #[test]
    fn generators_link_only_their_strands() {
        let g = 4;
        for ((i, j), a) in artin_generators(g).unwrap() {
            let l = a.linking_matrix().unwrap();
            for p in 0..g {
                for q in 0..g {
                    let expected = if (p + 1, q + 1) == (i, j) || (q + 1, p + 1) == (i, j) {
                        -1
                    } else {
                        0
                    };
                    assert_eq!(l[(p, q)], Int::from(expected), "A{i}{j}");
                }
            }
        }
    }

    #[test]
    fn group_laws() {
        let g = 3;
        let a = artin_generator(g, 1, 3).unwrap();
        let b = artin_generator(g, 2, 3).unwrap();
        assert!(a.compose(&a.inverse().unwrap()).unwrap().is_identity());
        assert!(PureBraid::identity(g).longitudes().iter().all(|l| l.is_empty()));
        let ab = a.compose(&b).unwrap();
        let la = a.linking_matrix().unwrap();
        let lb = b.linking_matrix().unwrap();
        let lab = ab.linking_matrix().unwrap();
        for p in 0..g {
            for q in 0..g {
                assert_eq!(lab[(p, q)], &la[(p, q)] + &lb[(p, q)]);
            }
        }
    }

    #[test]
    fn framings_on_diagonal() {
        let f = PureBraid::framing(&[1, 0, 0]);
        let l = f.linking_matrix().unwrap();
        assert_eq!(l[(0, 0)], Int::from(1));
        assert_eq!(l[(1, 1)], Int::from(0));
        assert!(PureBraid::identity(3).linking_matrix().unwrap().is_zero());
    }

    #[test]
    fn delta_examples() {
        let g = 2;
        let full = |s: &str| ReducedWord::parse(s, g, Alphabet::Full).unwrap();
        assert_eq!(delta(&xword(g, "x1")), full("x1 y1 x1^-1 y1^-1"));
        let expected = full("x1 y1 x1^-1 y1^-1")
            .multiply(&full("x2 y2 x2^-1 y2^-1").inverse())
            .unwrap();
        assert_eq!(delta(&xword(g, "x1 x2^-1")), expected);
    }

    #[test]
    fn delta_ranks() {
        for (g, n, r) in [(2, 2, 1), (2, 3, 2), (3, 2, 3)] {
            let rep = delta_star_rank(g, n, 2 * n).unwrap();
            assert_eq!(rep.rank, r);
            assert!(rep.injective && rep.order_preserved);
        }
        assert!(delta_star_rank(2, 3, 5).is_err());
    }

    #[test]
    fn rank_recursion() {
        assert_eq!(rank_r(4, 2, false), 4);
        assert_eq!(rank_r(3, 3, false), 2);
        for g in 1..6 {
            assert_eq!(rank_r(g, 1, true), (g * (g + 1) / 2) as u64);
        }
    }

    #[test]
    fn psi_and_kappa_preserve_boundaries() {
        let g = 3;
        for a in artin_generators(g).unwrap().values() {
            let p = psi(a).unwrap();
            assert!(p.is_in_lbar());
            let k = kappa(a).unwrap();
            assert!(k.is_torelli());
        }
    }

    #[test]
    fn jb_of_commutator() {
        let g = 3;
        let a = artin_generator(g, 1, 2).unwrap();
        let b = artin_generator(g, 1, 3).unwrap();
        let c = a.commutator(&b).unwrap();
        assert!(braid_weight_degree(&c, 4).unwrap().is_at_least(2));
        let j = j_b(&c).unwrap();
        assert!(!j.is_zero());
        assert!(j_b(&PureBraid::identity(g)).unwrap().is_zero());
        assert!(j_b(&a).is_err());
    }

    #[test]
    fn json_forms() {
        let j: BraidJson =
            serde_json::from_str(r#"{"strands":3,"word":"A12 A13^-1","framings":[0,1,0]}"#).unwrap();
        let b = PureBraid::from_json(&j).unwrap();
        assert_eq!(b.framings(), &[0, 1, 0]);
        let back = PureBraid::from_json(&b.to_json()).unwrap();
        assert_eq!(back.longitudes(), b.longitudes());
        assert_eq!(back.framings(), b.framings());
        assert!(parse_braid_word(3, "A21").is_err());
        assert!(parse_braid_word(3, "B12").is_err());
    }
}
