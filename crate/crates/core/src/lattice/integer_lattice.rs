use serde::{Deserialize, Serialize};

use super::hnf::{echelonize, hermite_normal_form, pivot_columns};
use super::matrix::Matrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A subgroup of `Z^n`, stored by the Hermite normal form of a basis.
///
/// Two lattices are equal iff their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice<T> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Lattice<T> {
    /// Lattice spanned by the rows of `generators`.
    pub fn from_generators(generators: &Matrix<T>) -> Self {
        Self {
            ambient: generators.cols(),
            basis: hermite_normal_form(generators),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        let m = Matrix::from_rows(ambient, vectors)?;
        Ok(Self::from_generators(&m))
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Sublattice spanned by the selected standard basis vectors.
    pub fn coordinate(ambient: usize, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        let mut basis = Matrix::zeros(indices.len(), ambient);
        for (r, &i) in indices.iter().enumerate() {
            basis[(r, i)] = T::one();
        }
        Self { ambient, basis }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Result<Option<Vec<T>>> {
        if v.len() != self.ambient {
            return Err(Error::VectorLength {
                got: v.len(),
                expected: self.ambient,
            });
        }
        let mut rest = v.to_vec();
        let pivots = pivot_columns(&self.basis, self.rank());
        let mut coords = Vec::with_capacity(self.rank());
        for (i, &p) in pivots.iter().enumerate() {
            let piv = &self.basis[(i, p)];
            if !rest[p].is_multiple_of(piv) {
                return Ok(None);
            }
            let q = rest[p].clone() / piv.clone();
            if !q.is_zero() {
                for (r, b) in rest.iter_mut().zip(self.basis.row(i)) {
                    if !b.is_zero() {
                        r.sub_assign_ref(&b.mul_ref(&q));
                    }
                }
            }
            coords.push(q);
        }
        Ok(rest.iter().all(|x| x.is_zero()).then_some(coords))
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.same_ambient(other)?;
        for i in 0..self.rank() {
            if !other.contains(self.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(Self::from_generators(&self.basis.vstack(&other.basis)?))
    }

    /// Invariant factors of `self / sub`; zeros stand for free summands.
    /// Factors equal to one are omitted, so an empty result means equality.
    pub fn quotient_invariants(&self, sub: &Self) -> Result<Vec<T>> {
        self.same_ambient(sub)?;
        let mut rows = Vec::with_capacity(sub.rank());
        for i in 0..sub.rank() {
            match self.coordinates(sub.basis.row(i))? {
                Some(c) => rows.push(c),
                None => {
                    return Err(Error::NotSublattice(format!(
                        "basis vector {i} of the second lattice is not in the first"
                    )))
                }
            }
        }
        let coords = Matrix::from_rows(self.rank(), rows)?;
        let snf = smith_normal_form(&coords);
        let mut inv: Vec<T> = Vec::new();
        for i in 0..self.rank() {
            let d = snf.diag.get(i).cloned().unwrap_or_else(T::zero);
            if !d.is_one() {
                inv.push(d);
            }
        }
        Ok(inv)
    }

    /// Intersection with another lattice in the same ambient space.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        // v = a A = b B  <=>  (a, -b) in ker [A; B]^T
        let stacked = self.basis.vstack(&other.basis)?;
        let ker = kernel_lattice(&stacked.transpose());
        let ra = self.rank();
        let mut gens = Vec::with_capacity(ker.rank());
        for i in 0..ker.rank() {
            let a = &ker.basis.row(i)[..ra];
            let mut v = vec![T::zero(); self.ambient];
            for (coef, r) in a.iter().zip(0..ra) {
                if coef.is_zero() {
                    continue;
                }
                for (x, b) in v.iter_mut().zip(self.basis.row(r)) {
                    x.add_assign_ref(&coef.mul_ref(b));
                }
            }
            gens.push(v);
        }
        Self::from_vectors(self.ambient, gens)
    }

    pub fn convert<U: Scalar>(&self) -> Lattice<U> {
        Lattice {
            ambient: self.ambient,
            basis: self.basis.convert(),
        }
    }
}

/// Lattice of integer vectors `v` with `m v = 0`.
pub fn kernel_lattice<T: Scalar>(m: &Matrix<T>) -> Lattice<T> {
    let (r, c) = m.shape();
    // Row-reduce [m^T | I]; rows whose m^T part vanishes carry the kernel.
    let mut aug = Matrix::zeros(c, r + c);
    for i in 0..c {
        for j in 0..r {
            aug[(i, j)] = m[(j, i)].clone();
        }
        aug[(i, r + i)] = T::one();
    }
    let rank = echelonize(&mut aug, r);
    let gens: Vec<Vec<T>> = (rank..c).map(|i| aug.row(i)[r..].to_vec()).collect();
    Lattice::from_vectors(c, gens).expect("kernel rows have ambient width")
}

/// Image lattice `{ m v }` inside `Z^rows`.
pub fn image_lattice<T: Scalar>(m: &Matrix<T>) -> Lattice<T> {
    Lattice::from_generators(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Lattice<BigInt>;

    fn span(rows: &[&[i64]]) -> L {
        L::from_generators(&Matrix::from_i64_rows(rows))
    }

    #[test]
    fn kernel_of_single_relation() {
        let k = kernel_lattice(&Matrix::<BigInt>::from_i64_rows(&[&[1, 1]]));
        assert_eq!(k, span(&[&[1, -1]]));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_lattice(&Matrix::<BigInt>::identity(3));
        assert!(k.is_zero());
        assert_eq!(k.ambient_rank(), 3);
    }

    #[test]
    fn index_two_sublattice() {
        let a = span(&[&[1, 0]]);
        let b = span(&[&[2, 0]]);
        assert!(b.is_subset_of(&a).unwrap());
        assert_eq!(a.quotient_invariants(&b).unwrap(), vec![BigInt::from(2)]);
        assert!(a.quotient_invariants(&a).unwrap().is_empty());
    }

    #[test]
    fn free_quotient_reports_zero() {
        let a = L::full(2);
        let b = span(&[&[1, 0]]);
        assert_eq!(a.quotient_invariants(&b).unwrap(), vec![BigInt::from(0)]);
        assert!(matches!(
            b.quotient_invariants(&a),
            Err(Error::NotSublattice(_))
        ));
    }

    #[test]
    fn equality_and_membership() {
        assert_eq!(span(&[&[1, 1], &[0, 2]]), span(&[&[1, -1], &[0, 2]]));
        let even = span(&[&[2, 0], &[0, 2]]);
        let one_one: Vec<BigInt> = vec![1.into(), 1.into()];
        assert!(!even.contains(&one_one).unwrap());
    }

    #[test]
    fn errors_on_mismatch() {
        let a = L::full(2);
        let b = L::full(3);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch { .. })));
        assert!(matches!(
            a.contains(&[BigInt::from(1)]),
            Err(Error::VectorLength { .. })
        ));
    }

    #[test]
    fn intersection_of_coordinate_and_diagonal() {
        let a = span(&[&[2, 0], &[0, 1]]);
        let b = span(&[&[1, 1]]);
        assert_eq!(a.intersection(&b).unwrap(), span(&[&[2, 2]]));
    }
}
