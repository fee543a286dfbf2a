//! The convolution algebra `C*` of a finite-dimensional coalgebra, written in
//! the dual basis `e^0..e^{n-1}`: `(f * g)(x) = f(x₍₁₎) g(x₍₂₎)`, so
//! `e^j * e^k = Σ_i c^{jk}_i e^i` where `c^{jk}_i` is the coefficient of
//! `e_j ⊗ e_k` in `Δ(e_i)`.

use crate::exactlin::{kernel_of, Field, Matrix, SparseVec, Subspace};

use super::{Coalgebra, CoalgError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualAlgebra {
    field: Field,
    dim: usize,
    /// `products[j·dim + k] = e^j * e^k`
    products: Vec<SparseVec>,
    unit: SparseVec,
}

impl DualAlgebra {
    /// Transposes the comultiplication tensor. Callers are expected to have
    /// checked the coalgebra axioms.
    pub(crate) fn from_coalgebra(c: &Coalgebra) -> Self {
        let n = c.dim();
        let mut buckets: Vec<Vec<(usize, crate::exactlin::Scalar)>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for (j, k, coeff) in c.delta(i) {
                buckets[j * n + k].push((i, coeff.clone()));
            }
        }
        DualAlgebra {
            field: c.field(),
            dim: n,
            products: buckets.into_iter().map(SparseVec::from_pairs).collect(),
            unit: c.epsilon_vector(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn basis_product(&self, j: usize, k: usize) -> &SparseVec {
        &self.products[j * self.dim + k]
    }

    /// Convolution product of two functionals.
    pub fn multiply(&self, f: &SparseVec, g: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, a) in f.iter() {
            for (k, b) in g.iter() {
                acc = acc.add_scaled(&(a * b), self.basis_product(j, k));
            }
        }
        acc
    }

    /// Matrix of `g ↦ f * g`.
    pub fn left_multiplication(&self, f: &SparseVec) -> Matrix {
        let columns: Vec<SparseVec> = (0..self.dim)
            .map(|k| self.multiply(f, &SparseVec::unit(self.field, k)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &columns)
    }

    /// First basis triple `(a, b, c)` with `(e^a e^b) e^c ≠ e^a (e^b e^c)`.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                let ab = self.basis_product(a, b);
                for c in 0..n {
                    let left = self.multiply(ab, &SparseVec::unit(self.field, c));
                    let right = self.multiply(&SparseVec::unit(self.field, a), self.basis_product(b, c));
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// True when `ε` is a two-sided identity on every basis element.
    pub fn unit_law_holds(&self) -> bool {
        (0..self.dim).all(|k| {
            let e = SparseVec::unit(self.field, k);
            self.multiply(&self.unit, &e) == e && self.multiply(&e, &self.unit) == e
        })
    }

    /// Jacobson radical as the kernel of the trace form
    /// `T(x, y) = tr(L_x L_y)`. Valid in characteristic 0 or when the
    /// characteristic exceeds the dimension.
    pub fn radical(&self) -> Result<Subspace, CoalgError> {
        let p = self.field.characteristic();
        if p != 0 && p as u128 <= self.dim as u128 {
            return Err(CoalgError::RadicalOutOfRange { characteristic: p, dim: self.dim });
        }
        let n = self.dim;
        // L_x L_y = L_{xy}, so T(x, y) = τ(xy) with τ(z) = tr(L_z).
        let tau = SparseVec::from_pairs((0..n).filter_map(|i| {
            let mut acc = self.field.zero();
            for j in 0..n {
                if let Some(c) = self.basis_product(i, j).get(j) {
                    acc = &acc + c;
                }
            }
            (!acc.is_zero()).then_some((i, acc))
        }));
        let rows: Vec<SparseVec> = (0..n)
            .map(|a| {
                SparseVec::from_pairs(
                    (0..n).filter_map(|b| self.basis_product(a, b).dot(&tau).map(|s| (b, s))),
                )
            })
            .collect();
        Ok(kernel_of(&Matrix::from_rows(self.field, n, rows)))
    }

    /// Span of all products `u * v` with `u ∈ i`, `v ∈ j`.
    pub fn ideal_product(&self, i: &Subspace, j: &Subspace) -> Result<Subspace, CoalgError> {
        for s in [i, j] {
            if s.ambient_dim() != self.dim {
                return Err(CoalgError::AmbientMismatch { expected: self.dim, found: s.ambient_dim() });
            }
        }
        let products: Vec<SparseVec> = i
            .basis()
            .iter()
            .flat_map(|u| j.basis().iter().map(move |v| self.multiply(u, v)))
            .collect();
        Ok(Subspace::span(self.field, self.dim, products))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{divided_power, q, two_cycle};
    use super::*;

    #[test]
    fn field_dual() {
        let c = Coalgebra::new(Field::Rational, vec!["g".into()], vec![vec![(0, 0, q(1))]], vec![q(1)]).unwrap();
        let d = c.dual_algebra().unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.basis_product(0, 0), &SparseVec::unit(Field::Rational, 0));
        assert!(d.radical().unwrap().is_zero());
    }

    #[test]
    fn divided_power_dual_has_nilpotent_generator() {
        let d = divided_power().dual_algebra().unwrap();
        let x = SparseVec::unit(Field::Rational, 1);
        assert!(d.multiply(&x, &x).is_zero());
        assert_eq!(d.unit(), &SparseVec::unit(Field::Rational, 0));
        assert_eq!(d.radical().unwrap(), Subspace::coordinate(Field::Rational, 2, [1]));
        assert!(d.associativity_defect().is_none());
        assert!(d.unit_law_holds());
    }

    #[test]
    fn concatenation_in_the_dual() {
        let d = two_cycle(false).dual_algebra().unwrap();
        // x1* · y1* = p1*
        assert_eq!(d.basis_product(2, 3), &SparseVec::unit(Field::Rational, 4));
        assert!(d.basis_product(3, 2).is_zero());
        // orthogonal idempotents for the grouplikes
        assert_eq!(d.basis_product(0, 0), &SparseVec::unit(Field::Rational, 0));
        assert!(d.basis_product(0, 1).is_zero());
        let rad = d.radical().unwrap();
        assert_eq!(rad.dim(), 3);
        assert_eq!(rad, Subspace::coordinate(Field::Rational, 5, [0, 1]).perp());
    }

    #[test]
    fn radical_rejects_small_characteristic() {
        let mut c = two_cycle(false);
        c = Coalgebra::new(
            Field::Prime(5),
            c.labels().to_vec(),
            (0..5)
                .map(|i| c.delta(i).iter().map(|(j, k, _)| (*j, *k, Field::Prime(5).one())).collect())
                .collect(),
            c.epsilon().iter().map(|e| Field::Prime(5).from_i64(e.to_i64().unwrap())).collect(),
        )
        .unwrap();
        let d = c.dual_algebra().unwrap();
        assert!(matches!(d.radical(), Err(CoalgError::RadicalOutOfRange { characteristic: 5, dim: 5 })));
    }

    #[test]
    fn ideal_products() {
        let c = two_cycle(false);
        let d = c.dual_algebra().unwrap();
        let full = Subspace::full(Field::Rational, 5);
        assert_eq!(d.ideal_product(&full, &full).unwrap(), full);
        let j = d.radical().unwrap();
        let c1 = Subspace::coordinate(Field::Rational, 5, [0, 1, 2, 3]);
        assert_eq!(d.ideal_product(&j, &j).unwrap(), c1.perp());
    }
}
