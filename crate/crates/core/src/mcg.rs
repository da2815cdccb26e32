//! Mapping classes of the once-bordered surface, represented by their
//! action on the free group `F = <x_1..x_g, y_1..y_g>`, and the Johnson-type
//! invariants computed from that action.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::braid::{artin_generator, kappa, psi};
use crate::error::{Error, Result};
use crate::exterior::{
    contract2, eta, eta_preimage, proj_p, sp3_action, theta, Space, TensorWedge, WedgeVector,
};
use crate::lattice::Matrix;
use crate::lie::{lie_class, lyndon_basis, HTensorLie, LieVector};
use crate::magnus::{word_degree, WordDegree};
use crate::words::{
    boundary_word, push_reduced, Alphabet, BoundaryConvention, GenSymbol, ReducedWord,
};
use crate::Int;

/// An endomorphism of `F` given by the images of the generators, indexed by
/// generator code, optionally with the images of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEndo {
    genus: usize,
    boundary: BoundaryConvention,
    images: Vec<ReducedWord>,
    inverse: Option<Vec<ReducedWord>>,
}

fn substitute(images: &[ReducedWord], inverses: &[ReducedWord], w: &ReducedWord) -> Vec<i32> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let idx = l.unsigned_abs() as usize - 1;
        let img = if l > 0 { &images[idx] } else { &inverses[idx] };
        for &c in img.letters() {
            push_reduced(&mut out, c);
        }
    }
    out
}

fn apply_images(genus: usize, images: &[ReducedWord], w: &ReducedWord) -> ReducedWord {
    let inverses: Vec<ReducedWord> = images.iter().map(|i| i.inverse()).collect();
    ReducedWord::from_reduced_unchecked(genus, Alphabet::Full, substitute(images, &inverses, w))
}

fn generator_words(genus: usize) -> Vec<ReducedWord> {
    (0..2 * genus)
        .map(|c| {
            ReducedWord::generator(genus, Alphabet::Full, GenSymbol::from_code(c, genus))
                .expect("valid generator")
        })
        .collect()
}

impl FreeEndo {
    /// Validated constructor: checks that the abelianization is invertible,
    /// that the boundary word is fixed, and that a supplied inverse witness
    /// really is a two-sided inverse.
    pub fn new(
        genus: usize,
        boundary: BoundaryConvention,
        images: Vec<ReducedWord>,
        inverse: Option<Vec<ReducedWord>>,
    ) -> Result<Self> {
        let f = Self::with_trusted_inverse(genus, boundary, images, inverse)?;
        if let Some(inv) = &f.inverse {
            let gens = generator_words(genus);
            for (z, gz) in gens.iter().enumerate() {
                let a = apply_images(genus, &f.images, &inv[z]);
                let b = apply_images(genus, inv, &f.images[z]);
                if &a != gz || &b != gz {
                    return Err(Error::BadInverse(format!(
                        "witness fails on {}",
                        GenSymbol::from_code(z, genus)
                    )));
                }
            }
        }
        Ok(f)
    }

    /// Like `new`, but takes the inverse witness on trust. Used for images of
    /// braids under `psi` and `kappa`, whose inverses come from the braid
    /// group law; substituting long images into each other is quadratic.
    pub(crate) fn with_trusted_inverse(
        genus: usize,
        boundary: BoundaryConvention,
        images: Vec<ReducedWord>,
        inverse: Option<Vec<ReducedWord>>,
    ) -> Result<Self> {
        let normalize = |v: Vec<ReducedWord>| -> Result<Vec<ReducedWord>> {
            if v.len() != 2 * genus {
                return Err(Error::Precondition(format!(
                    "expected {} generator images, got {}",
                    2 * genus,
                    v.len()
                )));
            }
            v.into_iter()
                .map(|w| {
                    if w.genus() != genus {
                        Err(Error::GenusMismatch {
                            left: genus,
                            right: w.genus(),
                        })
                    } else {
                        Ok(w.into_full())
                    }
                })
                .collect()
        };
        let f = Self {
            genus,
            boundary,
            images: normalize(images)?,
            inverse: inverse.map(normalize).transpose()?,
        };
        f.check_invariants()?;
        Ok(f)
    }

    fn check_invariants(&self) -> Result<()> {
        let det = self.symplectic_matrix().determinant()?;
        if det != Int::from(1) && det != Int::from(-1) {
            return Err(Error::Invariant(format!(
                "abelianization has determinant {det}"
            )));
        }
        let d = boundary_word(self.genus, self.boundary);
        let image = self.apply(&d);
        if image != d {
            return Err(Error::BoundaryNotPreserved(format!("{d} -> {image}")));
        }
        Ok(())
    }

    pub fn identity(genus: usize, boundary: BoundaryConvention) -> Self {
        let gens = generator_words(genus);
        Self {
            genus,
            boundary,
            images: gens.clone(),
            inverse: Some(gens),
        }
    }

    /// Builds from `(generator, image)` pairs; unlisted generators are fixed.
    pub fn from_assignments(
        genus: usize,
        boundary: BoundaryConvention,
        images: &[(GenSymbol, ReducedWord)],
        inverse: Option<&[(GenSymbol, ReducedWord)]>,
    ) -> Result<Self> {
        let fill = |pairs: &[(GenSymbol, ReducedWord)]| {
            let mut v = generator_words(genus);
            for (s, w) in pairs {
                if s.index == 0 || s.index > genus {
                    return Err(Error::AlphabetMismatch(format!("{s} in genus {genus}")));
                }
                v[s.code(genus)] = w.clone();
            }
            Ok(v)
        };
        let images = fill(images)?;
        let inverse = inverse.map(fill).transpose()?;
        Self::new(genus, boundary, images, inverse)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary(&self) -> BoundaryConvention {
        self.boundary
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    pub fn image(&self, s: GenSymbol) -> &ReducedWord {
        &self.images[s.code(self.genus)]
    }

    pub fn inverse_images(&self) -> Option<&[ReducedWord]> {
        self.inverse.as_deref()
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// Image of a word in `F` (x-only words are promoted).
    pub fn apply(&self, w: &ReducedWord) -> ReducedWord {
        assert_eq!(w.genus(), self.genus, "genus mismatch");
        apply_images(self.genus, &self.images, w)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        if self.boundary != other.boundary {
            return Err(Error::Precondition(
                "endomorphisms use different boundary conventions".into(),
            ));
        }
        Ok(())
    }

    /// `self o other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(a), Some(b)) => Some(a.iter().map(|w| apply_images(self.genus, b, w)).collect()),
            _ => None,
        };
        let out = Self {
            genus: self.genus,
            boundary: self.boundary,
            images,
            inverse,
        };
        out.check_invariants()?;
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .inverse
            .clone()
            .ok_or_else(|| Error::NoInverse("endomorphism carries no inverse witness".into()))?;
        Ok(Self {
            genus: self.genus,
            boundary: self.boundary,
            images: inv,
            inverse: Some(self.images.clone()),
        })
    }

    /// `[f, h] = f h f^-1 h^-1`.
    pub fn commutator(&self, h: &Self) -> Result<Self> {
        self.compose(h)?
            .compose(&self.inverse()?)?
            .compose(&h.inverse()?)
    }

    /// Action on `H`: column `j` holds the exponent sums of the image of
    /// generator `j`.
    pub fn symplectic_matrix(&self) -> Matrix<Int> {
        let n = 2 * self.genus;
        let mut m = Matrix::zeros(n, n);
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_sums().into_iter().enumerate() {
                m[(i, j)] = Int::from(e);
            }
        }
        m
    }

    pub fn is_torelli(&self) -> bool {
        self.symplectic_matrix() == Matrix::identity(2 * self.genus)
    }

    /// Acts on `H` symplectically and as the identity on `L`.
    pub fn is_in_lbar(&self) -> bool {
        crate::exterior::is_bg(&self.symplectic_matrix())
    }

    /// `z^-1 f(z)` for generator code `z`.
    pub fn defect(&self, z: usize) -> ReducedWord {
        let gz = generator_words(self.genus).swap_remove(z);
        gz.inverse().multiply(&self.images[z]).expect("same genus")
    }

    pub fn to_json(&self) -> EndoJson {
        let named = |v: &[ReducedWord]| {
            v.iter()
                .enumerate()
                .map(|(c, w)| (GenSymbol::from_code(c, self.genus).to_string(), w.to_string()))
                .collect()
        };
        EndoJson {
            genus: self.genus,
            boundary: self.boundary,
            images: named(&self.images),
            inverse_images: self.inverse.as_deref().map(named),
        }
    }

    pub fn from_json(j: &EndoJson) -> Result<Self> {
        let parse = |m: &BTreeMap<String, String>| -> Result<Vec<(GenSymbol, ReducedWord)>> {
            m.iter()
                .map(|(k, v)| {
                    let s = ReducedWord::parse(k, j.genus, Alphabet::Full)?;
                    let [l] = s.letters() else {
                        return Err(Error::Parse(format!("{k:?} is not a generator")));
                    };
                    if *l < 0 {
                        return Err(Error::Parse(format!("{k:?} is not a generator")));
                    }
                    let sym = GenSymbol::from_code(*l as usize - 1, j.genus);
                    Ok((sym, ReducedWord::parse(v, j.genus, Alphabet::Full)?))
                })
                .collect()
        };
        let images = parse(&j.images)?;
        let inverse = j.inverse_images.as_ref().map(parse).transpose()?;
        Self::from_assignments(j.genus, j.boundary, &images, inverse.as_deref())
    }
}

impl fmt::Display for FreeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, w) in self.images.iter().enumerate() {
            if c > 0 {
                write!(f, ", ")?;
            }
            let w = if w.is_empty() { "1".to_string() } else { w.to_string() };
            write!(f, "{} -> {}", GenSymbol::from_code(c, self.genus), w)?;
        }
        Ok(())
    }
}

/// Serialized form of a [`FreeEndo`]; generators missing from `images` are
/// fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoJson {
    pub genus: usize,
    pub boundary: BoundaryConvention,
    pub images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_images: Option<BTreeMap<String, String>>,
}

/// Largest `n` with `f` acting trivially on `F/F_{n+1}`, detected using
/// Magnus expansions up to degree `cutoff`.
pub fn endo_weight_degree(f: &FreeEndo, cutoff: usize) -> Result<WordDegree> {
    let mut best = WordDegree::Identity;
    for z in 0..2 * f.genus {
        let d = match word_degree(&f.defect(z), cutoff)? {
            WordDegree::Identity => continue,
            WordDegree::Exact(n) => WordDegree::Exact(n - 1),
            WordDegree::AtLeast(n) => WordDegree::AtLeast(n - 1),
        };
        let better = match (best, d) {
            (WordDegree::Identity, _) => true,
            (b, d) if d.lower_bound() < b.lower_bound() => true,
            (WordDegree::AtLeast(a), WordDegree::Exact(b)) => b == a,
            _ => false,
        };
        if better {
            best = d;
        }
    }
    Ok(best)
}

/// Degree-two Lie element read as a vector of `Lambda^2 H`, `[a,b] -> a^b`.
pub fn lie2_to_wedge(g: usize, v: &LieVector<Int>) -> WedgeVector<Int> {
    assert_eq!((v.alphabet, v.degree), (2 * g, 2));
    let basis = v.basis();
    let mut out = WedgeVector::zero(Space::H(g), 2);
    for (i, c) in &v.coords {
        let w = basis.word(*i);
        out.add_wedge(&[w[0] as usize, w[1] as usize], c);
    }
    out
}

fn class(w: &ReducedWord, n: usize) -> Result<LieVector<Int>> {
    Ok(lie_class::<i128>(w, n)?.convert())
}

/// `J^(f) w`: the class of `w^-1 f(w)` in `F_2/F_3 = Lambda^2 H`, for `w`
/// with homology class in `L`.
pub fn hat_j(f: &FreeEndo, w: &ReducedWord) -> Result<WedgeVector<Int>> {
    let g = f.genus;
    if w.genus() != g {
        return Err(Error::GenusMismatch {
            left: g,
            right: w.genus(),
        });
    }
    let w = w.clone().into_full();
    if w.exponent_sums()[g..].iter().any(|&e| e != 0) {
        return Err(Error::Precondition(format!(
            "{w} does not have homology class in L"
        )));
    }
    let d = w.inverse().multiply(&f.apply(&w))?;
    Ok(lie2_to_wedge(g, &class(&d, 2)?))
}

/// The pair `(J~(f), J_omega(f))` in `Lambda^3(H/L) (+) H/L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalJ {
    pub wedge: WedgeVector<Int>,
    pub vector: Vec<Int>,
}

impl CalJ {
    pub fn is_zero(&self) -> bool {
        self.wedge.is_zero() && self.vector.iter().all(|c| c == &Int::from(0))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            wedge: self.wedge.add(&other.wedge),
            vector: self
                .vector
                .iter()
                .zip(&other.vector)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// The extension of the Johnson homomorphism to maps fixing `L`.
pub fn cal_j(f: &FreeEndo) -> Result<CalJ> {
    let g = f.genus;
    if !f.is_in_lbar() {
        return Err(Error::Precondition("map does not fix L".into()));
    }
    let mut t = TensorWedge::zero(Space::HmodL(g));
    let mut vector = vec![Int::from(0); g];
    for (i, v) in vector.iter_mut().enumerate() {
        let xi = ReducedWord::x(g, Alphabet::Full, i + 1)?;
        let jx = hat_j(f, &xi)?;
        t.add_tensor(i, &proj_p(g, &jx), &Int::from(-1));
        *v = -contract2(g, &jx);
    }
    if !theta(&t).is_zero() {
        return Err(Error::Invariant(
            "theta does not vanish on the L-part of J^".into(),
        ));
    }
    Ok(CalJ {
        wedge: eta_preimage(&t)?,
        vector,
    })
}

/// Assemble `sum_i x_i (x) phi(y_i) - y_i (x) phi(x_i)`.
fn dual_tensor(g: usize, phi: &[LieVector<Int>]) -> HTensorLie<Int> {
    let (alphabet, degree) = (phi[0].alphabet, phi[0].degree);
    let mut t = HTensorLie::zero(2 * g, alphabet, degree);
    let one = Int::from(1);
    for i in 0..g {
        t.add_tensor(i, &phi[g + i], &one);
        t.add_tensor(g + i, &phi[i], &-one.clone());
    }
    t
}

/// The Johnson homomorphism `T_g -> Lambda^3 H`.
pub fn johnson_tau(f: &FreeEndo) -> Result<WedgeVector<Int>> {
    let g = f.genus;
    if !f.is_torelli() {
        return Err(Error::Precondition("map is not in the Torelli group".into()));
    }
    let mut t = TensorWedge::zero(Space::H(g));
    let one = Int::from(1);
    for i in 0..g {
        let phi_y = lie2_to_wedge(g, &class(&f.defect(g + i), 2)?);
        let phi_x = lie2_to_wedge(g, &class(&f.defect(i), 2)?);
        t.add_tensor(i, &phi_y, &one);
        t.add_tensor(g + i, &phi_x, &-one.clone());
    }
    eta_preimage(&t)
}

static B_CHECKS_PASSED: AtomicUsize = AtomicUsize::new(0);
static B_CHECKS_FAILED: AtomicUsize = AtomicUsize::new(0);

/// `(passed, failed)` counts of the `b(J_n) = 0` check, process-wide.
pub fn jn_bracket_checks() -> (usize, usize) {
    (
        B_CHECKS_PASSED.load(Ordering::SeqCst),
        B_CHECKS_FAILED.load(Ordering::SeqCst),
    )
}

/// The Johnson-Morita homomorphism `J_n: Gamma_g[n] -> H (x) L_{n+1}(H)`.
/// Every value is checked to lie in the kernel of the bracket map.
pub fn johnson_morita_jn(f: &FreeEndo, n: usize) -> Result<HTensorLie<Int>> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let g = f.genus;
    let mut phi = Vec::with_capacity(2 * g);
    for z in 0..2 * g {
        match lie_class::<i128>(&f.defect(z), n + 1) {
            Ok(v) => phi.push(v.convert()),
            Err(Error::Precondition(_)) => {
                return Err(Error::Precondition(format!(
                    "map is not in the weight-{n} subgroup"
                )))
            }
            Err(e) => return Err(e),
        }
    }
    checked_jn(g, n, &phi)
}

/// Assemble `J_n` from the degree `n+1` classes of the defects and check
/// that it lies in the kernel of the bracket map.
pub(crate) fn checked_jn(g: usize, n: usize, phi: &[LieVector<Int>]) -> Result<HTensorLie<Int>> {
    let t = dual_tensor(g, phi);
    if t.convert::<i128>().bracket_map()?.is_zero() {
        B_CHECKS_PASSED.fetch_add(1, Ordering::SeqCst);
        Ok(t)
    } else {
        B_CHECKS_FAILED.fetch_add(1, Ordering::SeqCst);
        Err(Error::Invariant(format!("b(J_{n}) is nonzero")))
    }
}

/// Both sides of `J([f,h]) = (f_* - 1) J(h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JcomReport {
    pub lhs: WedgeVector<Int>,
    pub rhs: WedgeVector<Int>,
    pub equal: bool,
}

pub fn jcom_check(f: &FreeEndo, h: &FreeEndo) -> Result<JcomReport> {
    let lhs = johnson_tau(&f.commutator(h)?)?;
    let th = johnson_tau(h)?;
    let rhs = sp3_action(&f.symplectic_matrix(), &th)?.sub(&th);
    Ok(JcomReport {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Meridian twist `T_i^e`: `y_i -> y_i x_i^e`, everything else fixed.
pub fn meridian_twist(g: usize, i: usize, e: i64, boundary: BoundaryConvention) -> Result<FreeEndo> {
    let yi = ReducedWord::y(g, i)?;
    let xi = ReducedWord::x(g, Alphabet::Full, i)?;
    let img = yi.multiply(&xi.pow(e))?;
    let inv = yi.multiply(&xi.pow(-e))?;
    FreeEndo::from_assignments(
        g,
        boundary,
        &[(GenSymbol::y(i), img)],
        Some(&[(GenSymbol::y(i), inv)]),
    )
}

/// A named catalog element.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub endo: FreeEndo,
}

/// Meridian twists and their inverses, together with the images of the
/// Artin generators and their inverses under `psi` (longitude convention) or
/// `kappa` (admissible convention). Every entry carries an inverse witness.
pub fn twist_catalog(g: usize, boundary: BoundaryConvention) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for i in 1..=g {
        for (e, suffix) in [(1, ""), (-1, "^-1")] {
            out.push(CatalogEntry {
                name: format!("T{i}{suffix}"),
                endo: meridian_twist(g, i, e, boundary)?,
            });
        }
    }
    for i in 1..=g {
        for j in i + 1..=g {
            let a = artin_generator(g, i, j)?;
            for (b, suffix) in [(a.clone(), ""), (a.inverse()?, "^-1")] {
                let (name, endo) = match boundary {
                    BoundaryConvention::Longitude => (format!("psi(A{i}{j}{suffix})"), psi(&b)?),
                    BoundaryConvention::Admissible => {
                        (format!("kappa(A{i}{j}{suffix})"), kappa(&b)?)
                    }
                };
                out.push(CatalogEntry { name, endo });
            }
        }
    }
    Ok(out)
}

/// Images of the generators under the change of basis `c` with
/// `c(x_i) = P_i^-1 x_i^-1 P_i`, `c(y_i) = P_i^-1 y_i P_i`, `P_i = x_{i+1}..x_g`,
/// and under its inverse. `c` sends the admissible boundary word to the
/// longitude one and maps `L` onto `L`.
pub fn admissible_to_longitude(g: usize) -> Result<(Vec<ReducedWord>, Vec<ReducedWord>)> {
    let x = |i: usize| ReducedWord::x(g, Alphabet::Full, i);
    let mut fwd = generator_words(g);
    let mut bwd = generator_words(g);
    // suffix products P_i and their images under the inverse map
    let mut p = ReducedWord::identity(g, Alphabet::Full);
    let mut dp = ReducedWord::identity(g, Alphabet::Full);
    for i in (1..=g).rev() {
        let xi = x(i)?;
        let yi = ReducedWord::y(g, i)?;
        let pinv = p.inverse();
        fwd[i - 1] = pinv.multiply(&xi.inverse())?.multiply(&p)?;
        fwd[g + i - 1] = pinv.multiply(&yi)?.multiply(&p)?;
        bwd[i - 1] = dp.multiply(&xi.inverse())?.multiply(&dp.inverse())?;
        bwd[g + i - 1] = dp.multiply(&yi)?.multiply(&dp.inverse())?;
        p = xi.multiply(&p)?;
        dp = bwd[i - 1].multiply(&dp)?;
    }
    Ok((fwd, bwd))
}

/// `c f c^-1` for an admissible-convention `f`: the same mapping class in the
/// longitude basis. Longitude-convention input is returned unchanged.
pub fn to_longitude_model(f: &FreeEndo) -> Result<FreeEndo> {
    if f.boundary == BoundaryConvention::Longitude {
        return Ok(f.clone());
    }
    let g = f.genus;
    let (c, d) = admissible_to_longitude(g)?;
    let conj = |imgs: &[ReducedWord]| -> Vec<ReducedWord> {
        d.iter()
            .map(|w| apply_images(g, &c, &apply_images(g, imgs, w)))
            .collect()
    };
    let inverse = f.inverse.as_deref().map(conj);
    FreeEndo::new(g, BoundaryConvention::Longitude, conj(&f.images), inverse)
}

/// Generators of the Lagrangian subgroup in the longitude model: the
/// longitude catalog together with the admissible catalog transported by
/// `to_longitude_model` (names primed).
pub fn lagrangian_catalog(g: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = twist_catalog(g, BoundaryConvention::Longitude)?;
    for e in twist_catalog(g, BoundaryConvention::Admissible)? {
        out.push(CatalogEntry {
            name: format!("{}'", e.name),
            endo: to_longitude_model(&e.endo)?,
        });
    }
    Ok(out)
}

/// Names of the Lyndon elements of degree `n` over `H`.
pub fn lie_basis_names(g: usize, n: usize) -> Vec<String> {
    let b = lyndon_basis(2 * g, n);
    let names = |c: u8| GenSymbol::from_code(c as usize, g).to_string();
    (0..b.len()).map(|i| b.bracketing(i, &names)).collect()
}

/// `J_n` value as a sum of `h (x) [Lyndon bracket]` terms.
pub fn render_htensor(g: usize, t: &HTensorLie<Int>) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let names = lie_basis_names(g, t.degree);
    let mut out = String::new();
    for (n, ((h, i), c)) in t.coords.iter().enumerate() {
        let term = format!("{} (x) {}", GenSymbol::from_code(*h, g), names[*i]);
        let neg = c < &Int::from(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        let sign = match (n, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        if mag == Int::from(1) {
            out.push_str(&format!("{sign}{term}"));
        } else {
            out.push_str(&format!("{sign}{mag}*{term}"));
        }
    }
    out
}

/// `eta` of a `Lambda^3 H` vector, exposed for report formatting.
pub fn tau_tensor(w: &WedgeVector<Int>) -> TensorWedge<Int> {
    eta(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::bg_embed;

    fn word(g: usize, s: &str) -> ReducedWord {
        ReducedWord::parse(s, g, Alphabet::Full).unwrap()
    }

    #[test]
    fn basis_change_matches_boundary_words() {
        for g in 1..=4 {
            let (c, d) = admissible_to_longitude(g).unwrap();
            let a = boundary_word(g, BoundaryConvention::Admissible);
            let l = boundary_word(g, BoundaryConvention::Longitude);
            assert_eq!(apply_images(g, &c, &a), l);
            for (z, gz) in generator_words(g).iter().enumerate() {
                assert_eq!(&apply_images(g, &c, &d[z]), gz);
                assert_eq!(&apply_images(g, &d, &c[z]), gz);
            }
        }
    }

    #[test]
    fn lagrangian_catalog_fixes_l() {
        let cat = lagrangian_catalog(3).unwrap();
        assert_eq!(cat.len(), 24);
        for e in &cat {
            assert!(e.endo.is_in_lbar(), "{}", e.name);
            assert!(e.endo.has_inverse());
        }
    }

    #[test]
    fn identity_laws() {
        let g = 2;
        let t1 = meridian_twist(g, 1, 1, BoundaryConvention::Admissible).unwrap();
        let id = FreeEndo::identity(g, BoundaryConvention::Admissible);
        assert_eq!(id.compose(&t1).unwrap().images(), t1.images());
        assert_eq!(t1.commutator(&t1).unwrap().images(), id.images());
        assert!(id.is_torelli());
        assert!(t1.is_in_lbar() && !t1.is_torelli());
    }

    #[test]
    fn twist_matrix_is_elementary() {
        let g = 2;
        let t1 = meridian_twist(g, 1, 1, BoundaryConvention::Admissible).unwrap();
        let mut a = Matrix::<Int>::zeros(g, g);
        a[(0, 0)] = Int::from(1);
        assert_eq!(t1.symplectic_matrix(), bg_embed(&a).unwrap());
    }

    #[test]
    fn boundary_is_checked() {
        let g = 1;
        // x1 -> x1 y1 preserves the admissible word but not the longitude one
        let img = [(GenSymbol::x(1), word(g, "x1 y1"))];
        let inv = [(GenSymbol::x(1), word(g, "x1 y1^-1"))];
        assert!(FreeEndo::from_assignments(g, BoundaryConvention::Admissible, &img, Some(&inv)).is_ok());
        assert!(matches!(
            FreeEndo::from_assignments(g, BoundaryConvention::Longitude, &img, Some(&inv)),
            Err(Error::BoundaryNotPreserved(_))
        ));
        let bad = [(GenSymbol::x(1), word(g, "x1"))];
        assert!(matches!(
            FreeEndo::from_assignments(g, BoundaryConvention::Admissible, &img, Some(&bad)),
            Err(Error::BadInverse(_))
        ));
    }

    #[test]
    fn hat_j_examples() {
        let g = 2;
        let t1 = meridian_twist(g, 1, 1, BoundaryConvention::Admissible).unwrap();
        let x1 = word(g, "x1");
        assert!(hat_j(&t1, &x1).unwrap().is_zero());
        let id = FreeEndo::identity(g, BoundaryConvention::Admissible);
        assert!(hat_j(&id, &word(g, "x1 x2 x1^-1")).unwrap().is_zero());
        assert!(hat_j(&t1, &word(g, "y1")).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = 2;
        let t = meridian_twist(g, 2, 1, BoundaryConvention::Longitude).unwrap();
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back = FreeEndo::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, t);
        let j: EndoJson = serde_json::from_str(
            r#"{"genus":1,"boundary":"admissible","images":{"y1":"y1 x1"}}"#,
        )
        .unwrap();
        let f = FreeEndo::from_json(&j).unwrap();
        assert!(!f.has_inverse());
        assert!(matches!(f.inverse(), Err(Error::NoInverse(_))));
    }

    #[test]
    fn catalog_is_in_lbar() {
        for conv in [BoundaryConvention::Admissible, BoundaryConvention::Longitude] {
            let cat = twist_catalog(3, conv).unwrap();
            assert_eq!(cat.len(), 6 + 6);
            for e in cat {
                assert!(e.endo.is_in_lbar(), "{}", e.name);
                assert!(e.endo.has_inverse());
            }
        }
    }

    #[test]
    fn jn_of_identity() {
        let id = FreeEndo::identity(2, BoundaryConvention::Admissible);
        for n in 1..=3 {
            assert!(johnson_morita_jn(&id, n).unwrap().is_zero());
        }
        assert!(johnson_tau(&id).unwrap().is_zero());
        assert_eq!(endo_weight_degree(&id, 4).unwrap(), WordDegree::Identity);
    }
}
