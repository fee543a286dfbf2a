//! Finite-dimensional comodules over a [`Coalgebra`].
//!
//! A left `C`-comodule is the same thing as a right comodule over the
//! co-opposite coalgebra `C^cop`, so every comodule is stored in *oriented*
//! form: a right coaction `ρ(m_i) = Σ c · m_j ⊗ e_k` over `C` (right side)
//! or over `C^cop` (left side). All algorithms are written once against the
//! oriented form.
//!
//! The dual algebra acts through the oriented coaction by
//! `f · v = v₍₀₎ f(v₍₁₎)`: a left `C*`-module structure for right comodules
//! and a right `C*`-module structure for left comodules.

mod hom;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coalg::{format_combination, CoalgError, Coalgebra, FiltrationChain, TensorTerm};
use crate::exactlin::{kernel_of, LinAlgError, Matrix, Scalar, SparseVec, Subspace};

pub use hom::{hom_image_sum, hom_space, is_comodule_map, radical_image_check, HomSpace, MultiplicityTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side `{other}` (expected `left` or `right`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComodError {
    #[error("comodules live on different sides ({0} vs {1})")]
    SideMismatch(Side, Side),
    #[error("comodules are over different coalgebras")]
    BaseMismatch,
    #[error("subspace is not stable under the coaction")]
    NotStable,
    #[error("unknown simple comodule `{0}` (simples are named by grouplike basis elements)")]
    UnknownSimple(String),
    #[error("the base coalgebra is not pointed")]
    NotPointed,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("coaction entry out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Coalg(#[from] CoalgError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone)]
pub struct Comodule {
    side: Side,
    base: Arc<Coalgebra>,
    oriented: Arc<Coalgebra>,
    coaction: Vec<Vec<TensorTerm>>,
    labels: Vec<String>,
}

impl PartialEq for Comodule {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side
            && self.coaction == other.coaction
            && (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
    }
}

impl Comodule {
    /// Builds a comodule from its coaction written in the side's own
    /// convention: for the right side `ρ(m_i) = Σ c · m_j ⊗ e_k`, for the
    /// left side `λ(m_i) = Σ c · e_j ⊗ m_k`, each term given as `(j, k, c)`.
    pub fn new(
        base: Arc<Coalgebra>,
        side: Side,
        coaction: Vec<Vec<TensorTerm>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ComodError> {
        let dim = coaction.len();
        let n = base.dim();
        let oriented_terms: Vec<Vec<TensorTerm>> = coaction
            .into_iter()
            .map(|terms| {
                terms
                    .into_iter()
                    .map(|(j, k, c)| match side {
                        Side::Right => (j, k, c),
                        Side::Left => (k, j, c),
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        for (i, terms) in oriented_terms.iter().enumerate() {
            for (m, e, _) in terms {
                if *m >= dim || *e >= n {
                    return Err(ComodError::IndexOutOfRange(format!("term of basis element {i}")));
                }
            }
        }
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("m{i}")).collect());
        if labels.len() != dim {
            return Err(ComodError::DimensionMismatch { expected: dim, found: labels.len() });
        }
        Ok(Self::from_oriented(base, side, oriented_terms, labels))
    }

    fn from_oriented(base: Arc<Coalgebra>, side: Side, coaction: Vec<Vec<TensorTerm>>, labels: Vec<String>) -> Self {
        let oriented = match side {
            Side::Right => base.clone(),
            Side::Left => Arc::new(base.co_opposite()),
        };
        let coaction = coaction.into_iter().map(canonical).collect();
        Comodule { side, base, oriented, coaction, labels }
    }

    fn sibling(&self, coaction: Vec<Vec<TensorTerm>>, labels: Vec<String>) -> Self {
        Comodule {
            side: self.side,
            base: self.base.clone(),
            oriented: self.oriented.clone(),
            coaction: coaction.into_iter().map(canonical).collect(),
            labels,
        }
    }

    /// `C` over itself via `Δ`.
    pub fn regular(base: Arc<Coalgebra>, side: Side) -> Self {
        let n = base.dim();
        let terms = (0..n).map(|i| base.delta(i).to_vec()).collect();
        let labels = base.labels().to_vec();
        // In side convention the regular coaction is Δ on both sides.
        Comodule::new(base, side, terms, Some(labels)).expect("regular comodule is well-formed")
    }

    /// The one-dimensional comodule of weight `g` (a grouplike basis label).
    pub fn simple(base: Arc<Coalgebra>, side: Side, label: &str) -> Result<Self, ComodError> {
        let g = base
            .index_of(label)
            .ok()
            .filter(|&g| base.is_grouplike(g))
            .ok_or_else(|| ComodError::UnknownSimple(label.to_string()))?;
        let one = base.field().one();
        Ok(Self::from_oriented(base, side, vec![vec![(0, g, one)]], vec![label.to_string()]))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn base(&self) -> &Arc<Coalgebra> {
        &self.base
    }

    /// The coalgebra the oriented (right) coaction lives over.
    pub fn oriented_base(&self) -> &Coalgebra {
        &self.oriented
    }

    pub fn dim(&self) -> usize {
        self.coaction.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Oriented coaction terms `(j, k, c)` meaning `c · m_j ⊗ e_k`.
    pub fn oriented_coaction(&self, i: usize) -> &[TensorTerm] {
        &self.coaction[i]
    }

    pub fn field(&self) -> crate::exactlin::Field {
        self.base.field()
    }

    pub(crate) fn compatible(&self, other: &Comodule) -> Result<(), ComodError> {
        if self.side != other.side {
            return Err(ComodError::SideMismatch(self.side, other.side));
        }
        if !(Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) {
            return Err(ComodError::BaseMismatch);
        }
        Ok(())
    }

    fn check_subspace(&self, x: &Subspace) -> Result<(), ComodError> {
        if x.ambient_dim() != self.dim() {
            return Err(ComodError::DimensionMismatch { expected: self.dim(), found: x.ambient_dim() });
        }
        Ok(())
    }

    /// `(id ⊗ e^k) ρ(v)` for every `k`, as `(k, vector in M)` pairs.
    fn coaction_slices(&self, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let mut by_k: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> = Default::default();
        for (i, a) in v.iter() {
            for (j, k, c) in &self.coaction[i] {
                by_k.entry(*k).or_default().push((*j, a * c));
            }
        }
        by_k.into_iter()
            .map(|(k, pairs)| (k, SparseVec::from_pairs(pairs)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    /// Coassociativity `(ρ⊗id)ρ = (id⊗Δ)ρ` and counit `(id⊗ε)ρ = id`,
    /// checked entry-wise on the oriented coaction.
    pub fn check(&self) -> ComoduleReport {
        let field = self.field();
        let eps = self.oriented.epsilon();
        for i in 0..self.dim() {
            let mut left: std::collections::BTreeMap<[usize; 3], Scalar> = Default::default();
            let mut right: std::collections::BTreeMap<[usize; 3], Scalar> = Default::default();
            for (j, k, c) in &self.coaction[i] {
                for (a, b, d) in &self.coaction[*j] {
                    add_entry(&mut left, [*a, *b, *k], c * d);
                }
                for (a, b, d) in self.oriented.delta(*k) {
                    add_entry(&mut right, [*j, *a, *b], c * d);
                }
            }
            let keys: std::collections::BTreeSet<[usize; 3]> = left.keys().chain(right.keys()).copied().collect();
            for key in keys {
                let l = left.get(&key).cloned().unwrap_or_else(|| field.zero());
                let r = right.get(&key).cloned().unwrap_or_else(|| field.zero());
                if l != r {
                    return ComoduleReport {
                        failure: Some(ComoduleFailure::Coassociativity { basis: i, entry: key, left: l, right: r }),
                    };
                }
            }
            let counit = SparseVec::from_pairs(self.coaction[i].iter().map(|(j, k, c)| (*j, c * &eps[*k])));
            let diff = counit.sub(&SparseVec::unit(field, i));
            if let Some((entry, _)) = diff.leading() {
                return ComoduleReport {
                    failure: Some(ComoduleFailure::Counit {
                        basis: i,
                        entry,
                        found: counit.get(entry).cloned().unwrap_or_else(|| field.zero()),
                    }),
                };
            }
        }
        ComoduleReport { failure: None }
    }

    /// Action of a functional `f ∈ C*` as the matrix of `v ↦ v₍₀₎ f(v₍₁₎)`.
    pub fn dual_action(&self, f: &SparseVec) -> Result<Matrix, ComodError> {
        if let Some(m) = f.max_index() {
            if m >= self.base.dim() {
                return Err(ComodError::DimensionMismatch { expected: self.base.dim(), found: m + 1 });
            }
        }
        let columns: Vec<SparseVec> = (0..self.dim())
            .map(|i| {
                SparseVec::from_pairs(
                    self.coaction[i]
                        .iter()
                        .filter_map(|(j, k, c)| f.get(*k).map(|fk| (*j, c * fk))),
                )
            })
            .collect();
        Ok(Matrix::from_columns(self.field(), self.dim(), &columns))
    }

    /// `{v : I·v = 0}` for a subspace `I ⊆ C*`.
    pub fn annihilated_by(&self, ideal: &Subspace) -> Result<Subspace, ComodError> {
        let blocks = ideal
            .basis()
            .iter()
            .map(|f| self.dual_action(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(kernel_of(&Matrix::stack(self.field(), self.dim(), &blocks)))
    }

    /// `{v : J·v = 0}` with `J` the radical of `C*`.
    pub fn socle(&self) -> Result<Subspace, ComodError> {
        let radical = self.base.dual_algebra()?.radical()?;
        self.annihilated_by(&radical)
    }

    /// `L_n M = {v : J^{n+1} v = 0}`, until it exhausts `M`.
    pub fn loewy_series(&self) -> Result<FiltrationChain, ComodError> {
        let dual = self.base.dual_algebra()?;
        let radical = dual.radical()?;
        FiltrationChain::from_annihilated_powers(&dual, &radical, |power| self.annihilated_by(power))
    }

    /// `C*·{v₁, …}`: the smallest subcomodule containing the given vectors.
    pub fn generated_subcomodule(&self, vectors: &[SparseVec]) -> Subspace {
        let slices = vectors
            .iter()
            .flat_map(|v| self.coaction_slices(v).into_iter().map(|(_, s)| s))
            .collect::<Vec<_>>();
        Subspace::span(self.field(), self.dim(), slices)
    }

    /// `ρ(X) ⊆ X ⊗ C`.
    pub fn is_subcomodule(&self, x: &Subspace) -> Result<bool, ComodError> {
        self.check_subspace(x)?;
        Ok(x.basis().iter().all(|v| {
            self.coaction_slices(v)
                .iter()
                .all(|(_, s)| x.contains_vector(s))
        }))
    }

    fn require_subcomodule(&self, x: &Subspace) -> Result<(), ComodError> {
        if self.is_subcomodule(x)? {
            Ok(())
        } else {
            Err(ComodError::NotStable)
        }
    }

    /// The subcomodule `X` with the restricted coaction, in the RREF basis
    /// of `X`.
    pub fn subcomodule(&self, x: &Subspace) -> Result<Comodule, ComodError> {
        self.require_subcomodule(x)?;
        let coaction = x
            .basis()
            .iter()
            .map(|v| {
                self.coaction_slices(v)
                    .into_iter()
                    .flat_map(|(k, s)| {
                        let coords = x.coordinates(&s).expect("stable subspace");
                        coords.iter().map(|(j, c)| (j, k, c.clone())).collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        let labels = x.basis().iter().map(|v| format_combination(&self.labels, v)).collect();
        Ok(self.sibling(coaction, labels))
    }

    /// `M / X` with the induced coaction; the quotient basis is the image of
    /// the coordinate vectors at the free (non-pivot) columns of `X`.
    pub fn quotient(&self, x: &Subspace) -> Result<Comodule, ComodError> {
        self.require_subcomodule(x)?;
        let field = self.field();
        let free = x.free_columns();
        let coaction = free
            .iter()
            .map(|&f| {
                self.coaction_slices(&SparseVec::unit(field, f))
                    .into_iter()
                    .flat_map(|(k, s)| {
                        x.quotient_coordinates(&s)
                            .iter()
                            .map(|(j, c)| (j, k, c.clone()))
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        let labels = free.iter().map(|&f| self.labels[f].clone()).collect();
        Ok(self.sibling(coaction, labels))
    }

    pub fn direct_sum(&self, other: &Comodule) -> Result<Comodule, ComodError> {
        self.compatible(other)?;
        let shift = self.dim();
        let coaction = self
            .coaction
            .iter()
            .cloned()
            .chain(other.coaction.iter().map(|terms| {
                terms.iter().map(|(j, k, c)| (j + shift, *k, c.clone())).collect()
            }))
            .collect();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{l}@1"))
            .chain(other.labels.iter().map(|l| format!("{l}@2")))
            .collect();
        Ok(self.sibling(coaction, labels))
    }

    /// `M ⊕ … ⊕ M` (`copies` summands).
    pub fn power(&self, copies: usize) -> Result<Comodule, ComodError> {
        let mut acc = self.sibling(Vec::new(), Vec::new());
        for _ in 0..copies {
            let shift = acc.dim();
            let mut coaction = acc.coaction.clone();
            coaction.extend(self.coaction.iter().map(|terms| {
                terms.iter().map(|(j, k, c)| (j + shift, *k, c.clone())).collect::<Vec<_>>()
            }));
            let mut labels = acc.labels.clone();
            let copy = shift / self.dim().max(1) + 1;
            labels.extend(self.labels.iter().map(|l| format!("{l}@{copy}")));
            acc = self.sibling(coaction, labels);
        }
        Ok(acc)
    }

    /// Smallest subcoalgebra `W` with `ρ(M) ⊆ M ⊗ W`: the span of the
    /// coefficient vectors `Σ_k c_{ijk} e_k`.
    pub fn coefficient_coalgebra(&self) -> Subspace {
        let n = self.base.dim();
        let mut rows: std::collections::BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = Default::default();
        for (i, terms) in self.coaction.iter().enumerate() {
            for (j, k, c) in terms {
                rows.entry((i, *j)).or_default().push((*k, c.clone()));
            }
        }
        Subspace::span(self.field(), n, rows.into_values().map(SparseVec::from_pairs))
    }

    pub fn format_vector(&self, v: &SparseVec) -> String {
        format_combination(&self.labels, v)
    }
}

fn canonical(terms: Vec<TensorTerm>) -> Vec<TensorTerm> {
    let mut map: std::collections::BTreeMap<(usize, usize), Scalar> = Default::default();
    for (j, k, c) in terms {
        match map.get_mut(&(j, k)) {
            Some(acc) => *acc = &*acc + &c,
            None => {
                map.insert((j, k), c);
            }
        }
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((j, k), c)| (j, k, c))
        .collect()
}

fn add_entry(map: &mut std::collections::BTreeMap<[usize; 3], Scalar>, key: [usize; 3], value: Scalar) {
    match map.get_mut(&key) {
        Some(acc) => *acc = &*acc + &value,
        None => {
            map.insert(key, value);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComoduleFailure {
    /// Entry `(j, a, b)` (module, coalgebra, coalgebra) of the two sides of
    /// the coassociativity law, in oriented coordinates.
    Coassociativity { basis: usize, entry: [usize; 3], left: Scalar, right: Scalar },
    /// `(id⊗ε)ρ(m_basis)` has coefficient `found` at `m_entry`.
    Counit { basis: usize, entry: usize, found: Scalar },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComoduleReport {
    pub failure: Option<ComoduleFailure>,
}

impl ComoduleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coalg::tests::q;
    use crate::exactlin::Field;

    pub fn two_cycle() -> Arc<Coalgebra> {
        Arc::new(crate::coalg::tests::two_cycle(false))
    }

    #[test]
    fn regular_and_simple_comodules_pass() {
        let c = two_cycle();
        for side in [Side::Left, Side::Right] {
            assert!(Comodule::regular(c.clone(), side).check().passed());
            assert!(Comodule::simple(c.clone(), side, "a").unwrap().check().passed());
        }
        assert!(matches!(Comodule::simple(c, Side::Right, "x1"), Err(ComodError::UnknownSimple(_))));
    }

    #[test]
    fn perturbed_coaction_fails() {
        let c = two_cycle();
        let mut terms: Vec<Vec<TensorTerm>> = (0..5).map(|i| c.delta(i).to_vec()).collect();
        terms[2][1].2 = q(2); // x1 ↦ a⊗x1 + 2·x1⊗b1
        let m = Comodule::new(c, Side::Right, terms, None).unwrap();
        assert!(!m.check().passed());
    }

    #[test]
    fn counit_acts_as_identity() {
        let c = two_cycle();
        let m = Comodule::regular(c.clone(), Side::Right);
        assert_eq!(m.dual_action(&c.epsilon_vector()).unwrap(), Matrix::identity(Field::Rational, 5));
    }

    #[test]
    fn grouplike_idempotents_act_by_weight() {
        let c = two_cycle();
        let sa = Comodule::simple(c.clone(), Side::Right, "a").unwrap();
        let ea = SparseVec::unit(Field::Rational, 0);
        let eb = SparseVec::unit(Field::Rational, 1);
        assert_eq!(sa.dual_action(&ea).unwrap(), Matrix::identity(Field::Rational, 1));
        assert!(sa.dual_action(&eb).unwrap().is_zero());
    }

    #[test]
    fn radical_kills_the_coradical() {
        let c = two_cycle();
        let m = Comodule::regular(c.clone(), Side::Right);
        let j = c.dual_algebra().unwrap().radical().unwrap();
        for f in j.basis() {
            let a = m.dual_action(f).unwrap();
            for g in c.grouplikes() {
                assert!(a.apply(&SparseVec::unit(Field::Rational, g)).is_zero());
            }
        }
    }

    #[test]
    fn socle_and_loewy_of_regular() {
        let c = two_cycle();
        for side in [Side::Left, Side::Right] {
            let m = Comodule::regular(c.clone(), side);
            assert_eq!(m.socle().unwrap(), c.grouplike_span());
            assert_eq!(m.loewy_series().unwrap().dims(), vec![2, 4, 5]);
        }
        let s = Comodule::simple(c, Side::Right, "b1").unwrap();
        let chain = s.loewy_series().unwrap();
        assert_eq!(chain.dims(), vec![1]);
    }

    #[test]
    fn quotient_examples() {
        let c = two_cycle();
        let m = Comodule::regular(c.clone(), Side::Right);
        let zero = Subspace::zero(Field::Rational, 5);
        let same = m.quotient(&zero).unwrap();
        assert_eq!(same.dim(), 5);
        assert!(same.check().passed());
        let all = m.quotient(&Subspace::full(Field::Rational, 5)).unwrap();
        assert_eq!(all.dim(), 0);
        let a = Subspace::coordinate(Field::Rational, 5, [0]);
        let q_a = m.quotient(&a).unwrap();
        assert!(q_a.check().passed());
        assert_eq!(q_a.labels(), &["b1", "x1", "y1", "p1"]);
        // span{x1, b1} is not a right subcomodule: Δx1 has a⊗x1
        let xb = Subspace::coordinate(Field::Rational, 5, [1, 2]);
        assert_eq!(m.quotient(&xb), Err(ComodError::NotStable));
    }

    #[test]
    fn coefficient_coalgebras() {
        let c = two_cycle();
        let s = Comodule::simple(c.clone(), Side::Right, "a").unwrap();
        assert_eq!(s.coefficient_coalgebra(), Subspace::coordinate(Field::Rational, 5, [0]));
        let m = Comodule::regular(c.clone(), Side::Right);
        assert!(m.coefficient_coalgebra().is_full());
        let ax = Subspace::coordinate(Field::Rational, 5, [0, 2]);
        let sub = m.subcomodule(&ax).unwrap();
        assert!(sub.check().passed());
        let cf = sub.coefficient_coalgebra();
        assert_eq!(cf, Subspace::coordinate(Field::Rational, 5, [0, 1, 2]));
        assert!(c.is_subcoalgebra(&cf).unwrap());
    }

    #[test]
    fn left_action_reverses_products() {
        let c = two_cycle();
        let d = c.dual_algebra().unwrap();
        let m = Comodule::regular(c.clone(), Side::Left);
        let (f, g) = (SparseVec::unit(Field::Rational, 2), SparseVec::unit(Field::Rational, 3));
        let composed = m.dual_action(&f).unwrap().compose(&m.dual_action(&g).unwrap());
        assert_eq!(m.dual_action(&d.multiply(&g, &f)).unwrap(), composed);
        let r = Comodule::regular(c, Side::Right);
        let composed = r.dual_action(&f).unwrap().compose(&r.dual_action(&g).unwrap());
        assert_eq!(r.dual_action(&d.multiply(&f, &g)).unwrap(), composed);
    }
}
