//! Endomorphisms of `F` acting on Magnus expansions truncated above a fixed
//! degree `N`. Truncation at `N` is exact on `F/F_{N+1}`, so weight degrees
//! below `N` and `J_n` for `n < N` are computed exactly, while long iterated
//! commutators stay cheap: their word images grow geometrically.

use crate::error::{Error, Result};
use crate::lie::{HTensorLie, LieVector};
use crate::magnus::{magnus_expand, WordDegree, DENSE_BUDGET};
use crate::mcg::{checked_jn, FreeEndo};
use crate::poly::{monomial_count, HomogeneousPoly};
use crate::words::{boundary_word, BoundaryConvention};
use crate::Int;

/// Dense truncated series: `levels[d]` holds all `k^d` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense {
    k: usize,
    levels: Vec<Vec<i128>>,
}

fn overflow() -> Error {
    Error::Budget("series coefficient overflowed i128".into())
}

impl Dense {
    fn zero(k: usize, n: usize) -> Self {
        Self {
            k,
            levels: (0..=n).map(|d| vec![0; monomial_count(k, d) as usize]).collect(),
        }
    }

    fn one(k: usize, n: usize) -> Self {
        let mut s = Self::zero(k, n);
        s.levels[0][0] = 1;
        s
    }

    fn cutoff(&self) -> usize {
        self.levels.len() - 1
    }

    fn from_word(w: &crate::words::ReducedWord, n: usize) -> Result<Self> {
        let s = magnus_expand::<i128>(w, n)?;
        let mut out = Self::zero(s.alphabet(), n);
        for (d, m, v) in s.terms() {
            out.levels[d][m as usize] = *v;
        }
        Ok(out)
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.cutoff();
        let mut out = Self::zero(self.k, n);
        for (da, a) in self.levels.iter().enumerate() {
            for db in 0..=n - da {
                let b = &other.levels[db];
                let shift = b.len();
                let dst = &mut out.levels[da + db];
                for (ia, &va) in a.iter().enumerate() {
                    if va == 0 {
                        continue;
                    }
                    let row = &mut dst[ia * shift..(ia + 1) * shift];
                    for (slot, &vb) in row.iter_mut().zip(b) {
                        if vb != 0 {
                            let p = va.checked_mul(vb).ok_or_else(overflow)?;
                            *slot = slot.checked_add(p).ok_or_else(overflow)?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn add_scaled(&mut self, other: &Self, c: i128) -> Result<()> {
        for (x, y) in self.levels.iter_mut().zip(&other.levels) {
            for (a, &b) in x.iter_mut().zip(y) {
                if b != 0 {
                    let p = b.checked_mul(c).ok_or_else(overflow)?;
                    *a = a.checked_add(p).ok_or_else(overflow)?;
                }
            }
        }
        Ok(())
    }

    /// Image under the algebra map `Z_i -> subs[i]` (each without constant term).
    fn substitute(&self, subs: &[Dense]) -> Result<Self> {
        let n = self.cutoff();
        let mut out = Self::zero(self.k, n);
        out.levels[0][0] = self.levels[0][0];
        // live[d][m]: some monomial of degree >= d with prefix m has a nonzero coefficient
        let mut live: Vec<Vec<bool>> = self.levels.iter().map(|l| l.iter().map(|&c| c != 0).collect()).collect();
        for d in (1..n).rev() {
            let (lo, hi) = live.split_at_mut(d + 1);
            for (m, flag) in lo[d].iter_mut().enumerate() {
                *flag = *flag || hi[0][m * self.k..(m + 1) * self.k].iter().any(|&b| b);
            }
        }
        let mut stack: Vec<(usize, usize, Dense)> = Vec::new();
        for (i, s) in subs.iter().enumerate() {
            if live[1][i] {
                stack.push((1, i, s.clone()));
            }
        }
        while let Some((d, m, p)) = stack.pop() {
            let c = self.levels[d][m];
            if c != 0 {
                out.add_scaled(&p, c)?;
            }
            if d == n {
                continue;
            }
            for (i, s) in subs.iter().enumerate() {
                let child = m * self.k + i;
                if live[d + 1][child] {
                    stack.push((d + 1, child, p.mul(s)?));
                }
            }
        }
        Ok(out)
    }

    fn minus_one(&self) -> Self {
        let mut s = self.clone();
        s.levels[0][0] -= 1;
        s
    }

    fn lowest_nonconstant_degree(&self) -> Option<usize> {
        (1..self.levels.len()).find(|&d| self.levels[d].iter().any(|&c| c != 0))
    }

    fn component(&self, d: usize) -> HomogeneousPoly<i128> {
        let mut p = HomogeneousPoly::zero(self.k, d);
        for (m, &c) in self.levels[d].iter().enumerate() {
            if c != 0 {
                p.add_term(m as u64, &c);
            }
        }
        p
    }
}

/// An invertible endomorphism of `F`, recorded by the truncated Magnus
/// expansions of the images of the generators and of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEndo {
    genus: usize,
    boundary: BoundaryConvention,
    images: Vec<Dense>,
    inverse: Vec<Dense>,
}

impl TruncatedEndo {
    /// Truncate `f`, which must carry an inverse witness.
    pub fn from_endo(f: &FreeEndo, cutoff: usize) -> Result<Self> {
        let g = f.genus();
        check_budget(g, cutoff)?;
        let inv = f
            .inverse_images()
            .ok_or_else(|| Error::NoInverse("truncation needs an inverse witness".into()))?;
        let expand = |ws: &[crate::words::ReducedWord]| -> Result<Vec<Dense>> {
            ws.iter().map(|w| Dense::from_word(w, cutoff)).collect()
        };
        Ok(Self {
            genus: g,
            boundary: f.boundary(),
            images: expand(f.images())?,
            inverse: expand(inv)?,
        })
    }

    pub fn identity(genus: usize, boundary: BoundaryConvention, cutoff: usize) -> Result<Self> {
        check_budget(genus, cutoff)?;
        let gens: Vec<Dense> = (0..2 * genus).map(|z| generator(2 * genus, cutoff, z)).collect();
        Ok(Self {
            genus,
            boundary,
            images: gens.clone(),
            inverse: gens,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn cutoff(&self) -> usize {
        self.images[0].cutoff()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus || self.boundary != other.boundary {
            return Err(Error::Precondition(
                "endomorphisms of different genus or boundary convention".into(),
            ));
        }
        if self.cutoff() != other.cutoff() {
            return Err(Error::Precondition("different truncation degrees".into()));
        }
        Ok(())
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let subs: Vec<Dense> = self.images.iter().map(Dense::minus_one).collect();
        let inv_subs: Vec<Dense> = other.inverse.iter().map(Dense::minus_one).collect();
        Ok(Self {
            genus: self.genus,
            boundary: self.boundary,
            images: other.images.iter().map(|s| s.substitute(&subs)).collect::<Result<_>>()?,
            inverse: self.inverse.iter().map(|s| s.substitute(&inv_subs)).collect::<Result<_>>()?,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            genus: self.genus,
            boundary: self.boundary,
            images: self.inverse.clone(),
            inverse: self.images.clone(),
        }
    }

    /// `[f, h] = f h f^-1 h^-1`.
    pub fn commutator(&self, h: &Self) -> Result<Self> {
        self.compose(h)?.compose(&self.inverse())?.compose(&h.inverse())
    }

    /// Expansion of `z^-1 f(z)` for generator code `z`.
    fn defect(&self, z: usize) -> Result<Dense> {
        let k = 2 * self.genus;
        let n = self.cutoff();
        // (1 + Z)^-1 = sum (-Z)^j
        let mut inv = Dense::one(k, n);
        let mut code = 0;
        for d in 1..=n {
            code = code * k + z;
            inv.levels[d][code] = if d % 2 == 0 { 1 } else { -1 };
        }
        inv.mul(&self.images[z])
    }

    /// Largest `n` with the map trivial on `F/F_{n+1}`; `AtLeast(N)` when the
    /// truncation cannot see any defect.
    pub fn weight_degree(&self) -> Result<WordDegree> {
        let mut low: Option<usize> = None;
        for z in 0..2 * self.genus {
            if let Some(d) = self.defect(z)?.lowest_nonconstant_degree() {
                low = Some(low.map_or(d, |l| l.min(d)));
            }
        }
        Ok(match low {
            Some(d) => WordDegree::Exact(d - 1),
            None => WordDegree::AtLeast(self.cutoff()),
        })
    }

    /// Composing with the recorded inverse gives the identity on both sides.
    pub fn inverse_is_consistent(&self) -> Result<bool> {
        let id = Self::identity(self.genus, self.boundary, self.cutoff())?;
        Ok(self.compose(&self.inverse())? == id && self.inverse().compose(self)? == id)
    }

    /// The declared boundary word is fixed modulo `F_{N+1}`.
    pub fn boundary_preserved(&self) -> Result<bool> {
        let d = Dense::from_word(&boundary_word(self.genus, self.boundary), self.cutoff())?;
        let subs: Vec<Dense> = self.images.iter().map(Dense::minus_one).collect();
        Ok(d.substitute(&subs)? == d)
    }

    /// `J_n`, available for `n < N` on maps of weight degree at least `n`.
    pub fn johnson_morita_jn(&self, n: usize) -> Result<HTensorLie<Int>> {
        if n == 0 || n >= self.cutoff() {
            return Err(Error::Precondition(format!(
                "J_{n} needs 1 <= n < truncation degree {}",
                self.cutoff()
            )));
        }
        let mut phi = Vec::with_capacity(2 * self.genus);
        for z in 0..2 * self.genus {
            let d = self.defect(z)?;
            if d.lowest_nonconstant_degree().is_some_and(|low| low <= n) {
                return Err(Error::Precondition(format!(
                    "map is not in the weight-{n} subgroup"
                )));
            }
            phi.push(LieVector::from_poly(&d.component(n + 1))?.convert());
        }
        checked_jn(self.genus, n, &phi)
    }
}

fn generator(k: usize, n: usize, z: usize) -> Dense {
    let mut s = Dense::one(k, n);
    if n >= 1 {
        s.levels[1][z] = 1;
    }
    s
}

fn check_budget(genus: usize, cutoff: usize) -> Result<()> {
    let k = 2 * genus as u64;
    let total: u64 = (0..=cutoff as u32).map(|d| k.saturating_pow(d)).fold(0, u64::saturating_add);
    if cutoff == 0 || total > DENSE_BUDGET / 16 {
        return Err(Error::Budget(format!(
            "truncation degree {cutoff} at genus {genus} is outside the series budget"
        )));
    }
    Ok(())
}
