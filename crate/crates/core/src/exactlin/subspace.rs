//! Subspaces of a coordinate space `K^n`, always stored by their reduced
//! row-echelon basis so that equality of subspaces is equality of values.

use std::fmt;

use thiserror::Error;

use super::echelon::{kernel, nullspace_of_rref, reduce_by_rref, rref};
use super::field::Field;
use super::sparse::{Matrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| SparseVec::unit(field, i)).collect(),
        }
    }

    /// Span of arbitrary vectors. Panics on out-of-range coordinates.
    pub fn span(field: Field, ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let vectors: Vec<SparseVec> = vectors.into_iter().collect();
        for v in &vectors {
            if let Some(m) = v.max_index() {
                assert!(m < ambient_dim, "coordinate {m} outside ambient dimension {ambient_dim}");
            }
        }
        Subspace {
            field,
            ambient_dim,
            basis: rref(field, ambient_dim, vectors),
        }
    }

    /// Span of coordinate vectors `e_i` for the given indices.
    pub fn coordinate(field: Field, ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Subspace::span(field, ambient_dim, indices.into_iter().map(|i| SparseVec::unit(field, i)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Pivot column of each basis vector, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.leading().unwrap().0).collect()
    }

    /// Non-pivot columns; the coordinate vectors at these indices span a
    /// complement of the subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for p in self.pivots() {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch(self.field, other.field));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after removing its component in this subspace
    /// (relative to the standard complement).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        reduce_by_rref(&self.basis, v)
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    /// For an RREF basis these are the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(SparseVec::from_pairs(
            self.pivots()
                .into_iter()
                .enumerate()
                .filter_map(|(k, p)| v.get(p).map(|c| (k, c.clone()))),
        ))
    }

    /// Coordinates of the image of `v` in the quotient `K^n / self`, using the
    /// free columns as the quotient basis.
    pub fn quotient_coordinates(&self, v: &SparseVec) -> SparseVec {
        let free = self.free_columns();
        let mut position = vec![usize::MAX; self.ambient_dim];
        for (k, &f) in free.iter().enumerate() {
            position[f] = k;
        }
        self.reduce(v).remap(|i| {
            let k = position[i];
            (k != usize::MAX).then_some(k)
        })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_ambient(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.field,
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Zassenhaus: reduce rows `[a | a]` and `[b | 0]`; the rows whose left
    /// half vanishes carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let n = self.ambient_dim;
        let rows = self
            .basis
            .iter()
            .map(|a| {
                SparseVec::from_pairs(a.iter().flat_map(|(i, v)| [(i, v.clone()), (i + n, v.clone())]))
            })
            .chain(other.basis.iter().cloned())
            .collect::<Vec<_>>();
        let reduced = rref(self.field, 2 * n, rows);
        let meet = reduced
            .into_iter()
            .filter(|r| r.leading().is_some_and(|(p, _)| p >= n))
            .map(|r| r.remap(|i| i.checked_sub(n)));
        Ok(Subspace::span(self.field, n, meet))
    }

    /// `dim self − dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinAlgError> {
        if !self.contains(sub)? {
            return Err(LinAlgError::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Annihilator under the pairing `<f, v> = Σ f_i v_i`, which identifies
    /// the dual space with `K^n` via the dual basis.
    pub fn perp(&self) -> Subspace {
        Subspace {
            field: self.field,
            ambient_dim: self.ambient_dim,
            basis: nullspace_of_rref(self.field, self.ambient_dim, &self.basis),
        }
    }

    /// Image of this subspace under a linear map.
    pub fn image(&self, f: &Matrix) -> Result<Subspace, LinAlgError> {
        if f.ncols() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: f.ncols(),
                found: self.ambient_dim,
            });
        }
        Ok(Subspace::span(self.field, f.nrows(), self.basis.iter().map(|v| f.apply(v))))
    }

    /// Basis as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient_dim, self.basis.clone())
    }
}

/// Row space of a matrix together with its rank.
pub fn echelonize(m: &Matrix) -> (usize, Subspace) {
    let s = Subspace::span(m.field(), m.ncols(), m.rows().iter().cloned());
    (s.dim(), s)
}

/// `{v : f(v) ∈ w}`.
pub fn preimage(f: &Matrix, w: &Subspace) -> Result<Subspace, LinAlgError> {
    if w.ambient_dim() != f.nrows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: f.nrows(),
            found: w.ambient_dim(),
        });
    }
    // v ∈ preimage  ⇔  every functional vanishing on w vanishes on f(v).
    let annihilator = w.perp().to_matrix();
    let constraints = annihilator.compose(f);
    Ok(Subspace {
        field: f.field(),
        ambient_dim: f.ncols(),
        basis: kernel(&constraints),
    })
}

/// Kernel of a linear map.
pub fn kernel_of(f: &Matrix) -> Subspace {
    Subspace {
        field: f.field(),
        ambient_dim: f.ncols(),
        basis: kernel(f),
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let dense = v.to_dense(self.field, self.ambient_dim);
            let parts: Vec<String> = dense.iter().map(|s| s.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}} ⊆ K^{}", self.ambient_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Scalar;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    fn vecq(vals: &[i64]) -> SparseVec {
        SparseVec::from_dense(&vals.iter().map(|&v| q(v)).collect::<Vec<_>>())
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::span(Field::Rational, n, vs.iter().map(|v| vecq(v)))
    }

    #[test]
    fn echelonize_examples() {
        let id = Matrix::identity(Field::Rational, 3);
        let (rank, basis) = echelonize(&id);
        assert_eq!(rank, 3);
        assert_eq!(basis, Subspace::full(Field::Rational, 3));

        let (rank, basis) = echelonize(&Matrix::zeros(Field::Rational, 2, 3));
        assert_eq!(rank, 0);
        assert!(basis.is_zero());

        let m = Matrix::from_rows(Field::Rational, 2, vec![vecq(&[1, 2]), vecq(&[2, 4])]);
        let (rank, basis) = echelonize(&m);
        assert_eq!(rank, 1);
        assert_eq!(basis.basis(), &[vecq(&[1, 2])]);
    }

    #[test]
    fn lattice_examples() {
        let a = span(2, &[&[1, 0]]);
        let b = span(2, &[&[0, 1]]);
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.contains(&a).unwrap());

        let a = span(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = span(3, &[&[1, 1, 1]]);
        assert!(a.contains(&b).unwrap());
        assert!(!b.contains(&a).unwrap());
        assert_eq!(a.quotient_dim(&b).unwrap(), 1);
        assert_eq!(b.quotient_dim(&a), Err(LinAlgError::NotContained));
    }

    #[test]
    fn perp_examples() {
        assert!(Subspace::zero(Field::Rational, 3).perp().is_full());
        assert!(Subspace::full(Field::Rational, 3).perp().is_zero());
        let x = span(3, &[&[1, 1, 0]]);
        assert_eq!(x.perp(), span(3, &[&[1, -1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn preimage_examples() {
        let f = Matrix::from_rows(Field::Rational, 2, vec![vecq(&[1, 0])]);
        let full = Subspace::full(Field::Rational, 1);
        assert!(preimage(&f, &full).unwrap().is_full());
        let zero = Subspace::zero(Field::Rational, 1);
        assert_eq!(preimage(&f, &zero).unwrap(), span(2, &[&[0, 1]]));
        assert_eq!(preimage(&f, &span(1, &[&[1]])).unwrap(), Subspace::full(Field::Rational, 2));
        assert!(preimage(&f, &Subspace::full(Field::Rational, 2)).is_err());
    }

    #[test]
    fn quotient_coordinates_use_free_columns() {
        let x = span(3, &[&[1, 1, 0]]);
        assert_eq!(x.free_columns(), vec![1, 2]);
        // (1,0,0) ≡ (0,-1,0) mod x
        assert_eq!(x.quotient_coordinates(&vecq(&[1, 0, 0])), vecq(&[-1, 0]));
        assert_eq!(x.coordinates(&vecq(&[2, 2, 0])), Some(vecq(&[2])));
        assert_eq!(x.coordinates(&vecq(&[0, 0, 1])), None);
    }
}
