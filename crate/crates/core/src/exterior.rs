//! Exterior powers of `H = Z^{2g}` and of its quotient `H/L`, the maps
//! relating `Lambda^3` to `H (x) Lambda^2` and to the free Lie ring, and the
//! sublattices of `Lambda^3 H` singled out by the Lagrangian.
//!
//! Basis of `H`: `x_i` has index `i - 1`, `y_i` has index `g + i - 1`.
//! `H/L` and `L` use indices `0..g` for `ybar_i` and `x_i` respectively.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{image_lattice, kernel_lattice, Lattice, Matrix};
use crate::lie::{lyndon_basis, LieVector};
use crate::poly::HomogeneousPoly;
use crate::scalar::Scalar;

/// The free module a wedge or tensor lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    H(usize),
    HmodL(usize),
    L(usize),
    /// A free module of the given rank with no further structure.
    Free(usize),
}

impl Space {
    pub fn dim(self) -> usize {
        match self {
            Space::H(g) => 2 * g,
            Space::HmodL(g) | Space::L(g) => g,
            Space::Free(d) => d,
        }
    }

    pub fn basis_name(self, i: usize) -> String {
        match self {
            Space::H(g) if i < g => format!("x{}", i + 1),
            Space::H(g) => format!("y{}", i - g + 1),
            Space::HmodL(_) => format!("yb{}", i + 1),
            Space::L(_) => format!("x{}", i + 1),
            Space::Free(_) => format!("e{}", i + 1),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Strictly increasing `k`-tuples of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Position of an increasing tuple in [`subsets`] order.
pub fn subset_index(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut idx = 0;
    let mut prev = 0;
    for (pos, &t) in tuple.iter().enumerate() {
        for skipped in prev..t {
            idx += binomial(n - skipped - 1, k - pos - 1);
        }
        prev = t + 1;
    }
    idx
}

/// Sort a tuple, returning the permutation sign, or `None` on a repeat.
fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = tuple.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Element of `Lambda^k` of a [`Space`], keyed by increasing basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeVector<T> {
    pub space: Space,
    pub degree: usize,
    pub coords: BTreeMap<Vec<usize>, T>,
}

impl<T: Scalar> WedgeVector<T> {
    pub fn zero(space: Space, degree: usize) -> Self {
        Self {
            space,
            degree,
            coords: BTreeMap::new(),
        }
    }

    /// `e_{t_1} ^ ... ^ e_{t_k}` for an arbitrary tuple.
    pub fn wedge(space: Space, tuple: &[usize]) -> Self {
        let mut v = Self::zero(space, tuple.len());
        v.add_wedge(tuple, &T::one());
        v
    }

    pub fn add_wedge(&mut self, tuple: &[usize], c: &T) {
        assert_eq!(tuple.len(), self.degree, "wedge of the wrong degree");
        assert!(tuple.iter().all(|&t| t < self.space.dim()), "index outside the space");
        if c.is_zero() {
            return;
        }
        let Some((sorted, odd)) = sort_with_sign(tuple) else {
            return;
        };
        let c = if odd { -c.clone() } else { c.clone() };
        let e = self.coords.entry(sorted.clone()).or_insert_with(T::zero);
        e.add_assign_ref(&c);
        if e.is_zero() {
            self.coords.remove(&sorted);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &T) {
        assert_eq!((self.space, self.degree), (other.space, other.degree));
        for (t, c) in &other.coords {
            self.add_wedge(t, &c.mul_ref(factor));
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

    pub fn to_dense(&self) -> Vec<T> {
        let n = self.space.dim();
        let mut v = vec![T::zero(); binomial(n, self.degree)];
        for (t, c) in &self.coords {
            v[subset_index(n, t)] = c.clone();
        }
        v
    }

    pub fn from_dense(space: Space, degree: usize, v: &[T]) -> Result<Self> {
        let tuples = subsets(space.dim(), degree);
        if v.len() != tuples.len() {
            return Err(Error::VectorLength {
                got: v.len(),
                expected: tuples.len(),
            });
        }
        let coords = tuples
            .into_iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t, c.clone()))
            .collect();
        Ok(Self {
            space,
            degree,
            coords,
        })
    }

    pub fn convert<U: Scalar>(&self) -> WedgeVector<U> {
        WedgeVector {
            space: self.space,
            degree: self.degree,
            coords: self.coords.iter().map(|(t, c)| (t.clone(), c.convert())).collect(),
        }
    }
}

impl<T: Scalar> fmt::Display for WedgeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (n, (t, c)) in self.coords.iter().enumerate() {
            let name = t
                .iter()
                .map(|&i| self.space.basis_name(i))
                .collect::<Vec<_>>()
                .join("^");
            let sep = if n == 0 { "" } else { " + " };
            if c.is_one() {
                write!(f, "{sep}{name}")?;
            } else {
                write!(f, "{sep}{c}*{name}")?;
            }
        }
        Ok(())
    }
}

/// Element of `V (x) Lambda^2 V`, keyed by `(h, (a, b))` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorWedge<T> {
    pub space: Space,
    pub coords: BTreeMap<(usize, (usize, usize)), T>,
}

impl<T: Scalar> TensorWedge<T> {
    pub fn zero(space: Space) -> Self {
        Self {
            space,
            coords: BTreeMap::new(),
        }
    }

    /// Add `c * h (x) (a ^ b)`.
    pub fn add_term(&mut self, h: usize, a: usize, b: usize, c: &T) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a < b {
            ((h, (a, b)), c.clone())
        } else {
            ((h, (b, a)), -c.clone())
        };
        let e = self.coords.entry(key).or_insert_with(T::zero);
        e.add_assign_ref(&c);
        if e.is_zero() {
            self.coords.remove(&key);
        }
    }

    /// Add `factor * h (x) w` for `w` in `Lambda^2`.
    pub fn add_tensor(&mut self, h: usize, w: &WedgeVector<T>, factor: &T) {
        assert_eq!(w.degree, 2);
        for (t, c) in &w.coords {
            self.add_term(h, t[0], t[1], &c.mul_ref(factor));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_dense(&self) -> Vec<T> {
        let n = self.space.dim();
        let w = binomial(n, 2);
        let mut v = vec![T::zero(); n * w];
        for ((h, (a, b)), c) in &self.coords {
            v[h * w + subset_index(n, &[*a, *b])] = c.clone();
        }
        v
    }
}

/// `eta(h1^h2^h3) = h1 (x) (h2^h3) + h2 (x) (h3^h1) + h3 (x) (h1^h2)`.
pub fn eta<T: Scalar>(v: &WedgeVector<T>) -> TensorWedge<T> {
    assert_eq!(v.degree, 3, "eta is defined on Lambda^3");
    let mut t = TensorWedge::zero(v.space);
    for (tuple, c) in &v.coords {
        let (a, b, d) = (tuple[0], tuple[1], tuple[2]);
        t.add_term(a, b, d, c);
        t.add_term(b, d, a, c);
        t.add_term(d, a, b, c);
    }
    t
}

/// The `eta`-preimage of `t`, if any.
pub fn eta_preimage<T: Scalar>(t: &TensorWedge<T>) -> Result<WedgeVector<T>> {
    let mut v = WedgeVector::zero(t.space, 3);
    for ((h, (a, b)), c) in &t.coords {
        if h < a {
            v.add_wedge(&[*h, *a, *b], c);
        }
    }
    if &eta(&v) != t {
        return Err(Error::Invariant(
            "tensor is not in the image of Lambda^3".into(),
        ));
    }
    Ok(v)
}

/// `theta(h (x) (a^b)) = [h, [a, b]]` in the free Lie ring on the basis.
pub fn theta<T: Scalar>(t: &TensorWedge<T>) -> LieVector<T> {
    let k = t.space.dim();
    let mut p = HomogeneousPoly::zero(k, 3);
    for ((h, (a, b)), c) in &t.coords {
        let inner = HomogeneousPoly::<T>::letter(k, *a).lie_bracket(&HomogeneousPoly::letter(k, *b));
        let outer = HomogeneousPoly::letter(k, *h).lie_bracket(&inner);
        p.add_scaled(&outer, c);
    }
    LieVector::from_poly(&p).expect("brackets are Lie elements")
}

/// Matrix of `eta` on `Lambda^3 V`, `dim V = d`; columns follow [`subsets`].
pub fn eta_matrix<T: Scalar>(d: usize) -> Matrix<T> {
    let space = Space::Free(d);
    let triples = subsets(d, 3);
    let mut m = Matrix::zeros(d * binomial(d, 2), triples.len());
    for (j, tr) in triples.iter().enumerate() {
        for (i, c) in eta(&WedgeVector::<T>::wedge(space, tr)).to_dense().into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    m
}

/// Matrix of `theta: V (x) Lambda^2 V -> L_3(V)` in Lyndon coordinates.
pub fn theta_matrix<T: Scalar>(d: usize) -> Matrix<T> {
    let space = Space::Free(d);
    let pairs = subsets(d, 2);
    let rows = lyndon_basis(d, 3).len();
    let mut m = Matrix::zeros(rows, d * pairs.len());
    for h in 0..d {
        for (j, pr) in pairs.iter().enumerate() {
            let mut t = TensorWedge::zero(space);
            t.add_term(h, pr[0], pr[1], &T::one());
            for (r, c) in theta(&t).coords {
                m[(r, h * pairs.len() + j)] = c;
            }
        }
    }
    m
}

/// `x_i . y_j = delta_ij = -(y_j . x_i)`, zero otherwise.
pub fn pairing(g: usize, a: usize, b: usize) -> i64 {
    if a < g && b == a + g {
        1
    } else if a >= g && b + g == a {
        -1
    } else {
        0
    }
}

/// Gram matrix of the pairing, `(0 I; -I 0)`.
pub fn omega<T: Scalar>(g: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(2 * g, 2 * g);
    for a in 0..2 * g {
        for b in 0..2 * g {
            m[(a, b)] = T::of_i64(pairing(g, a, b));
        }
    }
    m
}

/// `c(h1^h2^h3) = (h1.h2) h3 + (h2.h3) h1 + (h3.h1) h2`, as a vector of `H`.
pub fn contract_c<T: Scalar>(g: usize, w: &WedgeVector<T>) -> Vec<T> {
    assert_eq!((w.space, w.degree), (Space::H(g), 3));
    let mut out = vec![T::zero(); 2 * g];
    for (t, c) in &w.coords {
        let (a, b, d) = (t[0], t[1], t[2]);
        for (p, q, r) in [(a, b, d), (b, d, a), (d, a, b)] {
            let s = pairing(g, p, q);
            if s != 0 {
                out[r].add_assign_ref(&T::of_i64(s).mul_ref(c));
            }
        }
    }
    out
}

/// Contraction `Lambda^2 H -> Z`, `a^b -> a.b`.
pub fn contract2<T: Scalar>(g: usize, w: &WedgeVector<T>) -> T {
    assert_eq!((w.space, w.degree), (Space::H(g), 2));
    let mut out = T::zero();
    for (t, c) in &w.coords {
        out.add_assign_ref(&T::of_i64(pairing(g, t[0], t[1])).mul_ref(c));
    }
    out
}

/// Reduction `H -> H/L` in the `ybar` basis.
pub fn mod_l<T: Scalar>(g: usize, v: &[T]) -> Vec<T> {
    assert_eq!(v.len(), 2 * g);
    v[g..].to_vec()
}

/// `p: Lambda^k H -> Lambda^k (H/L)`.
pub fn proj_p<T: Scalar>(g: usize, w: &WedgeVector<T>) -> WedgeVector<T> {
    assert_eq!(w.space, Space::H(g));
    let mut out = WedgeVector::zero(Space::HmodL(g), w.degree);
    for (t, c) in &w.coords {
        if t.iter().all(|&i| i >= g) {
            let shifted: Vec<usize> = t.iter().map(|&i| i - g).collect();
            out.add_wedge(&shifted, c);
        }
    }
    out
}

/// Inclusion `Lambda^k L -> Lambda^k H`.
pub fn include_l<T: Scalar>(g: usize, w: &WedgeVector<T>) -> WedgeVector<T> {
    assert_eq!(w.space, Space::L(g));
    WedgeVector {
        space: Space::H(g),
        degree: w.degree,
        coords: w.coords.clone(),
    }
}

/// Number of `x` letters in a basis tuple of `H`.
fn x_count(g: usize, t: &[usize]) -> usize {
    t.iter().filter(|&&i| i < g).count()
}

/// `K_m`: spanned by basis wedges with at least `m` factors in `L`.
pub fn km_lattice<T: Scalar>(g: usize, m: usize) -> Lattice<T> {
    let triples = subsets(2 * g, 3);
    let idx = triples
        .iter()
        .enumerate()
        .filter(|(_, t)| x_count(g, t) >= m)
        .map(|(i, _)| i)
        .collect();
    Lattice::coordinate(triples.len(), idx)
}

/// Matrix of `p (+) (c mod L): Lambda^3 H -> Lambda^3(H/L) (+) H/L`.
pub fn p_c_matrix<T: Scalar>(g: usize) -> Matrix<T> {
    let triples = subsets(2 * g, 3);
    let top = binomial(g, 3);
    let mut m = Matrix::zeros(top + g, triples.len());
    for (j, t) in triples.iter().enumerate() {
        let w = WedgeVector::<T>::wedge(Space::H(g), t);
        for (i, c) in proj_p(g, &w).to_dense().into_iter().enumerate() {
            m[(i, j)] = c;
        }
        for (i, c) in mod_l(g, &contract_c(g, &w)).into_iter().enumerate() {
            m[(top + i, j)] = c;
        }
    }
    m
}

/// `K = ker(p (+) c mod L)` inside `Lambda^3 H`.
pub fn kernel_k<T: Scalar>(g: usize) -> Lattice<T> {
    kernel_lattice(&p_c_matrix::<T>(g))
}

/// Lattice spanned by a list of `Lambda^3 H` vectors.
pub fn span<T: Scalar>(g: usize, vs: &[WedgeVector<T>]) -> Lattice<T> {
    let n = binomial(2 * g, 3);
    Lattice::from_vectors(n, vs.iter().map(|v| v.to_dense()).collect()).expect("dense width")
}

fn hx(g: usize, i: usize) -> usize {
    debug_assert!(i < g);
    i
}

fn hy(g: usize, i: usize) -> usize {
    g + i
}

/// The four families of elements claimed to generate `K`.
///
/// Family 2 is `x_i^x_j^y_k` with `i != j`, `j != k`; the unrestricted
/// version is returned separately.
pub struct KFamilies<T> {
    pub families: [Vec<WedgeVector<T>>; 4],
    pub family2_unrestricted: Vec<WedgeVector<T>>,
}

pub fn k_families<T: Scalar>(g: usize) -> KFamilies<T> {
    let s = Space::H(g);
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    let mut f2u = Vec::new();
    let mut f3 = Vec::new();
    let mut f4 = Vec::new();
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                f1.push(WedgeVector::wedge(s, &[hx(g, i), hx(g, j), hx(g, k)]));
                let w2 = WedgeVector::wedge(s, &[hx(g, i), hx(g, j), hy(g, k)]);
                if i != j && j != k {
                    f2.push(w2.clone());
                }
                f2u.push(w2);
                if i != j && j != k && i != k {
                    f3.push(WedgeVector::wedge(s, &[hx(g, i), hy(g, j), hy(g, k)]));
                    let a = WedgeVector::wedge(s, &[hy(g, i), hx(g, i), hy(g, k)]);
                    let b = WedgeVector::wedge(s, &[hx(g, j), hy(g, j), hy(g, k)]);
                    f4.push(a.add(&b));
                }
            }
        }
    }
    let nonzero = |v: Vec<WedgeVector<T>>| v.into_iter().filter(|w| !w.is_zero()).collect();
    KFamilies {
        families: [nonzero(f1), nonzero(f2), nonzero(f3), nonzero(f4)],
        family2_unrestricted: nonzero(f2u),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGeneratorsReport {
    pub genus: usize,
    pub kernel_rank: usize,
    pub generated_rank: usize,
    pub family_ranks: [usize; 4],
    /// Every generator of every family lies in `K`.
    pub families_in_kernel: bool,
    /// The restricted and unrestricted family 2 span the same lattice.
    pub family2_restriction_harmless: bool,
    pub equal: bool,
    /// Invariant factors of `K / generated` (empty iff equal).
    pub quotient_invariants: Vec<String>,
}

pub fn k_generators_check(g: usize) -> Result<KGeneratorsReport> {
    type I = crate::Int;
    let kernel = kernel_k::<I>(g);
    let fam = k_families::<I>(g);
    let lattices: Vec<Lattice<I>> = fam.families.iter().map(|f| span(g, f)).collect();
    let mut families_in_kernel = true;
    for f in fam.families.iter().chain(std::iter::once(&fam.family2_unrestricted)) {
        for w in f {
            families_in_kernel &= kernel.contains(&w.to_dense())?;
        }
    }
    let mut generated = Lattice::zero(binomial(2 * g, 3));
    for l in &lattices {
        generated = generated.sum(l)?;
    }
    let unrestricted = span(g, &fam.family2_unrestricted);
    let family2_restriction_harmless = unrestricted == lattices[1];
    let (equal, quotient_invariants) = if generated.is_subset_of(&kernel)? {
        let inv = kernel.quotient_invariants(&generated)?;
        (inv.is_empty(), inv.iter().map(|d| d.to_string()).collect())
    } else {
        (false, vec!["generators escape K".into()])
    };
    Ok(KGeneratorsReport {
        genus: g,
        kernel_rank: kernel.rank(),
        generated_rank: generated.rank(),
        family_ranks: [
            lattices[0].rank(),
            lattices[1].rank(),
            lattices[2].rank(),
            lattices[3].rank(),
        ],
        families_in_kernel,
        family2_restriction_harmless,
        equal,
        quotient_invariants,
    })
}

fn check_square(s: &Matrix<impl Scalar>, n: usize) -> Result<()> {
    if s.shape() != (n, n) {
        return Err(Error::Shape(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    Ok(())
}

/// Image of `w` under the third exterior power of `s` (acting on columns).
pub fn sp3_action<T: Scalar>(s: &Matrix<T>, w: &WedgeVector<T>) -> Result<WedgeVector<T>> {
    let n = w.space.dim();
    check_square(s, n)?;
    let mut out = WedgeVector::zero(w.space, w.degree);
    let cols: Vec<Vec<(usize, T)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| !s[(i, j)].is_zero())
                .map(|i| (i, s[(i, j)].clone()))
                .collect()
        })
        .collect();
    for (t, c) in &w.coords {
        // multilinear expansion over the nonzero entries of each column
        let mut partial: Vec<(Vec<usize>, T)> = vec![(Vec::new(), c.clone())];
        for &j in t {
            let mut next = Vec::new();
            for (idx, coef) in &partial {
                for (i, e) in &cols[j] {
                    if idx.contains(i) {
                        continue;
                    }
                    let mut idx2 = idx.clone();
                    idx2.push(*i);
                    next.push((idx2, coef.mul_ref(e)));
                }
            }
            partial = next;
        }
        for (idx, coef) in partial {
            out.add_wedge(&idx, &coef);
        }
    }
    Ok(out)
}

/// Matrix of `Lambda^k s` on the `subsets` basis.
pub fn wedge_power_matrix<T: Scalar>(s: &Matrix<T>, k: usize) -> Result<Matrix<T>> {
    let n = s.rows();
    check_square(s, n)?;
    let tuples = subsets(n, k);
    let mut m = Matrix::zeros(tuples.len(), tuples.len());
    for (j, t) in tuples.iter().enumerate() {
        let img = sp3_action(s, &WedgeVector::wedge(Space::Free(n), t))?;
        for (i, c) in img.to_dense().into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    Ok(m)
}

pub fn is_symmetric<T: Scalar>(a: &Matrix<T>) -> bool {
    a.is_square() && *a == a.transpose()
}

/// `s^T Omega s = Omega`.
pub fn is_symplectic<T: Scalar>(s: &Matrix<T>) -> bool {
    let n = s.rows();
    if !s.is_square() || !n.is_multiple_of(2) {
        return false;
    }
    let om = omega::<T>(n / 2);
    let lhs = s.transpose().mul(&om).and_then(|m| m.mul(s));
    matches!(lhs, Ok(m) if m == om)
}

/// Symplectic and the identity on `L`.
pub fn is_bg<T: Scalar>(s: &Matrix<T>) -> bool {
    if !is_symplectic(s) {
        return false;
    }
    let g = s.rows() / 2;
    (0..g).all(|j| {
        (0..2 * g).all(|i| {
            let e = &s[(i, j)];
            if i == j {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    })
}

/// `(I A; 0 I)`.
pub fn bg_embed<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !is_symmetric(a) {
        return Err(Error::Precondition("B_g block must be symmetric".into()));
    }
    let g = a.rows();
    let mut s = Matrix::identity(2 * g);
    for i in 0..g {
        for j in 0..g {
            s[(i, g + j)] = a[(i, j)].clone();
        }
    }
    Ok(s)
}

/// The elementary symmetric matrices `E_ii` and `E_ij + E_ji`.
pub fn elementary_symmetric<T: Scalar>(g: usize) -> Vec<Matrix<T>> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in i..g {
            let mut a = Matrix::zeros(g, g);
            a[(i, j)] = T::one();
            a[(j, i)] = T::one();
            out.push(a);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmGenerationReport {
    pub genus: usize,
    pub m: usize,
    /// `(S - 1) K_{m-1}` lies in `K_m` for every elementary `S`.
    pub inclusion: bool,
    /// The images together with `K_{m+1}` span `K_m`.
    pub generated: bool,
    pub km_rank: usize,
    pub generated_rank: usize,
}

pub fn km_generation_check(g: usize, m: usize) -> Result<KmGenerationReport> {
    if !(2..=3).contains(&m) {
        return Err(Error::Precondition("m must be 2 or 3".into()));
    }
    type I = crate::Int;
    let km = km_lattice::<I>(g, m);
    let prev = km_lattice::<I>(g, m - 1);
    let next = km_lattice::<I>(g, m + 1);
    let n = binomial(2 * g, 3);
    let mut images = Vec::new();
    for a in elementary_symmetric::<I>(g) {
        let s = bg_embed(&a)?;
        let minus = wedge_power_matrix(&s, 3)?.sub(&Matrix::identity(n))?;
        for r in 0..prev.rank() {
            images.push(minus.apply(prev.basis().row(r))?);
        }
    }
    let img = Lattice::from_vectors(n, images)?;
    let inclusion = img.is_subset_of(&km)?;
    let total = img.sum(&next)?;
    Ok(KmGenerationReport {
        genus: g,
        m,
        inclusion,
        generated: total == km,
        km_rank: km.rank(),
        generated_rank: total.rank(),
    })
}

/// Image of `eta` and kernel of `theta` for `dim V = d`.
pub fn exact_sequence_lattices<T: Scalar>(d: usize) -> (Lattice<T>, Lattice<T>) {
    (image_lattice(&eta_matrix::<T>(d)), kernel_lattice(&theta_matrix::<T>(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn w(g: usize, t: &[usize]) -> WedgeVector<Int> {
        WedgeVector::wedge(Space::H(g), t)
    }

    #[test]
    fn subset_indexing() {
        for n in 0..7 {
            for k in 0..4 {
                let s = subsets(n, k);
                assert_eq!(s.len(), binomial(n, k));
                for (i, t) in s.iter().enumerate() {
                    assert_eq!(subset_index(n, t), i);
                }
            }
        }
    }

    #[test]
    fn wedge_signs() {
        let g = 2;
        let a = w(g, &[2, 0, 1]);
        assert_eq!(a.coords, BTreeMap::from([(vec![0, 1, 2], Int::from(1))]));
        let b = w(g, &[1, 0, 2]);
        assert_eq!(b.coords, BTreeMap::from([(vec![0, 1, 2], Int::from(-1))]));
        assert!(w(g, &[1, 1, 2]).is_zero());
    }

    #[test]
    fn eta_example() {
        // x1^x2^y1 -> x1 (x) (x2^y1) + x2 (x) (y1^x1) + y1 (x) (x1^x2)
        let g = 2;
        let t = eta(&w(g, &[0, 1, 2]));
        let mut expected = TensorWedge::zero(Space::H(g));
        expected.add_term(0, 1, 2, &Int::from(1));
        expected.add_term(1, 2, 0, &Int::from(1));
        expected.add_term(2, 0, 1, &Int::from(1));
        assert_eq!(t, expected);
        assert_eq!(eta_preimage(&t).unwrap(), w(g, &[0, 1, 2]));
        assert!(eta(&WedgeVector::<Int>::zero(Space::H(g), 3)).is_zero());
    }

    #[test]
    fn eta_and_theta_ranks() {
        assert_eq!(eta_matrix::<Int>(4).rank(), 4);
        let th = theta_matrix::<Int>(4);
        assert_eq!(th.rank(), 20);
        assert_eq!(th.cols() - th.rank(), 4);
        assert!(th.mul(&eta_matrix(4)).unwrap().is_zero());
    }

    #[test]
    fn theta_of_basic_tensor() {
        let mut t = TensorWedge::<Int>::zero(Space::H(1));
        t.add_term(0, 0, 1, &Int::from(1));
        let v = theta(&t);
        let basis = lyndon_basis(2, 3);
        assert_eq!(v.coords.len(), 1);
        assert_eq!(basis.word(*v.coords.keys().next().unwrap()), vec![0, 0, 1]);
    }

    #[test]
    fn contraction_examples() {
        let g = 3;
        let i64s = |v: Vec<Int>| v.into_iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        // x1^y1^y2 -> y2
        assert_eq!(i64s(contract_c(g, &w(g, &[0, 3, 4]))), vec![0, 0, 0, 0, 1, 0]);
        // x1^x2^y1 -> -x2
        assert_eq!(i64s(contract_c(g, &w(g, &[0, 1, 3]))), vec![0, -1, 0, 0, 0, 0]);
        assert!(contract_c(g, &w(g, &[0, 1, 2])).iter().all(|c| *c == Int::from(0)));
    }

    #[test]
    fn projection_examples() {
        let g = 3;
        let p = proj_p(g, &w(g, &[3, 4, 5]));
        assert_eq!(p, WedgeVector::wedge(Space::HmodL(g), &[0, 1, 2]));
        assert!(proj_p(g, &w(g, &[0, 3, 4])).is_zero());
        let m = p_c_matrix::<Int>(g);
        let top = Matrix::from_rows(20, m.to_rows()[..1].to_vec()).unwrap();
        assert_eq!(top.rank(), 1);
    }

    #[test]
    fn km_examples() {
        assert_eq!(km_lattice::<Int>(3, 3).rank(), 1);
        assert!(km_lattice::<Int>(3, 4).is_zero());
        assert_eq!(km_lattice::<Int>(2, 2).rank(), 2);
        assert_eq!(km_lattice::<Int>(3, 0).rank(), 20);
    }

    #[test]
    fn kernel_k_examples() {
        let k2 = kernel_k::<Int>(2);
        assert_eq!(k2, km_lattice(2, 2));
        let g = 3;
        let k = kernel_k::<Int>(g);
        let k1 = km_lattice::<Int>(g, 1);
        let k2 = km_lattice::<Int>(g, 2);
        assert!(k2.is_subset_of(&k).unwrap() && k.is_subset_of(&k1).unwrap());
        assert!(k2.rank() < k.rank() && k.rank() < k1.rank());
        for i in 0..g {
            for j in 0..g {
                for l in 0..g {
                    assert!(k.contains(&w(g, &[i, j, l]).to_dense()).unwrap());
                }
            }
        }
    }

    #[test]
    fn k_generation_small() {
        let r = k_generators_check(3).unwrap();
        assert!(r.equal, "{r:?}");
        assert!(r.families_in_kernel);
        let g = 3;
        let k = kernel_k::<Int>(g);
        let f2 = span(g, &k_families::<Int>(g).families[1]);
        assert!(!k.quotient_invariants(&f2).unwrap().is_empty());
    }

    #[test]
    fn jcom_worked_identities() {
        let g = 3;
        let (i, j, k) = (0, 1, 2);
        // f_*(y_k) = y_k + x_k
        let mut a = Matrix::<Int>::zeros(g, g);
        a[(k, k)] = Int::from(1);
        let s = bg_embed(&a).unwrap();
        let v = w(g, &[i, j, g + k]);
        let diff = sp3_action(&s, &v).unwrap().sub(&v);
        assert_eq!(diff, w(g, &[i, j, k]));
        // f_*(y_i) = y_i + x_j, f_*(y_j) = y_j + x_i
        let mut a = Matrix::<Int>::zeros(g, g);
        a[(j, i)] = Int::from(1);
        a[(i, j)] = Int::from(1);
        let s = bg_embed(&a).unwrap();
        let v = w(g, &[g + i, g + j, g + k]);
        let diff = sp3_action(&s, &v).unwrap().sub(&v);
        let expected = w(g, &[g + i, i, g + k])
            .add(&w(g, &[j, g + j, g + k]))
            .add(&w(g, &[j, i, g + k]));
        assert_eq!(diff, expected);
        let id = Matrix::<Int>::identity(2 * g);
        assert_eq!(sp3_action(&id, &v).unwrap(), v);
    }

    #[test]
    fn bg_membership() {
        for a in elementary_symmetric::<Int>(3) {
            let s = bg_embed(&a).unwrap();
            assert!(is_bg(&s) && is_symplectic(&s));
            // fixes Lambda^3 L
            let v = w(3, &[0, 1, 2]);
            assert_eq!(sp3_action(&s, &v).unwrap(), v);
        }
        let mut a = Matrix::<Int>::zeros(2, 2);
        a[(0, 1)] = Int::from(1);
        assert!(bg_embed(&a).is_err());
        assert!(sp3_action(&Matrix::<Int>::identity(3), &w(2, &[0, 1, 2])).is_err());
    }

    #[test]
    fn km_generation() {
        let r = km_generation_check(3, 3).unwrap();
        assert!(r.inclusion && r.generated);
        let r = km_generation_check(3, 2).unwrap();
        assert!(r.inclusion && r.generated, "{r:?}");
        let r = km_generation_check(2, 3).unwrap();
        assert!(r.generated && r.km_rank == 0);
    }
}
