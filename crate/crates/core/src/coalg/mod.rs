//! Finite-dimensional coalgebras given by structure constants.
//!
//! A coalgebra of dimension `n` has a labelled basis `e_0..e_{n-1}`, a
//! comultiplication `Δ(e_i) = Σ c · e_j ⊗ e_k` stored as `(j, k, c)` triples,
//! and a counit vector. Tensors `e_j ⊗ e_k` are flattened to the coordinate
//! `j·n + k` of `K^{n²}` everywhere in the crate.

mod dual;
mod filtration;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactlin::{kernel_of, preimage, Field, LinAlgError, Matrix, Scalar, SparseVec, Subspace};

pub use dual::DualAlgebra;
pub use filtration::FiltrationChain;

/// One structure-constant term `c · e_j ⊗ e_k`.
pub type TensorTerm = (usize, usize, Scalar);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgError {
    #[error("comultiplication has {found} rows but the basis has {expected} elements")]
    DeltaLength { expected: usize, found: usize },
    #[error("counit has {found} entries but the basis has {expected} elements")]
    EpsilonLength { expected: usize, found: usize },
    #[error("basis index {index} out of range (dimension {dim})")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("coalgebra axioms fail: {0}")]
    Axioms(String),
    #[error("`{0}` is not grouplike")]
    NotGrouplike(String),
    #[error("radical algorithm out of validity range: characteristic {characteristic} must be 0 or exceed the dimension {dim}")]
    RadicalOutOfRange { characteristic: u64, dim: usize },
    #[error("subspace lives in dimension {found}, coalgebra has dimension {expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Which containment [`Coalgebra::satisfies`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceKind {
    /// `Δ(X) ⊆ X ⊗ X`
    Subcoalgebra,
    /// `Δ(X) ⊆ C ⊗ X`
    LeftCoideal,
    /// `Δ(X) ⊆ X ⊗ C`
    RightCoideal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    field: Field,
    labels: Vec<String>,
    delta: Vec<Vec<TensorTerm>>,
    epsilon: Vec<Scalar>,
}

impl Coalgebra {
    /// Builds a coalgebra from structure constants. Repeated terms are
    /// summed; axioms are not checked here (see [`Coalgebra::check_axioms`]).
    pub fn new(
        field: Field,
        labels: Vec<String>,
        delta: Vec<Vec<TensorTerm>>,
        epsilon: Vec<Scalar>,
    ) -> Result<Self, CoalgError> {
        let n = labels.len();
        if delta.len() != n {
            return Err(CoalgError::DeltaLength { expected: n, found: delta.len() });
        }
        if epsilon.len() != n {
            return Err(CoalgError::EpsilonLength { expected: n, found: epsilon.len() });
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(CoalgError::DuplicateLabel(l.clone()));
            }
        }
        let delta = delta
            .into_iter()
            .map(|terms| canonical_terms(terms, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Coalgebra { field, labels, delta, epsilon })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CoalgError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CoalgError::UnknownLabel(label.to_string()))
    }

    pub fn delta(&self, i: usize) -> &[TensorTerm] {
        &self.delta[i]
    }

    pub fn epsilon(&self) -> &[Scalar] {
        &self.epsilon
    }

    pub fn epsilon_vector(&self) -> SparseVec {
        SparseVec::from_dense(&self.epsilon)
    }

    /// Flattened coordinate of `e_j ⊗ e_k`.
    pub fn tensor_index(&self, j: usize, k: usize) -> usize {
        j * self.dim() + k
    }

    /// `Δ` as an `n² × n` matrix.
    pub fn comultiplication(&self) -> Matrix {
        let n = self.dim();
        let columns: Vec<SparseVec> = (0..n).map(|i| self.delta_of(&SparseVec::unit(self.field, i))).collect();
        Matrix::from_columns(self.field, n * n, &columns)
    }

    /// `Δ(v)` in flattened tensor coordinates.
    pub fn delta_of(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(v.iter().flat_map(|(i, a)| {
            self.delta[i]
                .iter()
                .map(move |(j, k, c)| (self.tensor_index(*j, *k), a * c))
        }))
    }

    /// The co-opposite coalgebra: same basis, `Δ^cop = τ ∘ Δ`.
    pub fn co_opposite(&self) -> Coalgebra {
        Coalgebra {
            field: self.field,
            labels: self.labels.clone(),
            delta: self
                .delta
                .iter()
                .map(|terms| {
                    let mut t: Vec<TensorTerm> = terms.iter().map(|(j, k, c)| (*k, *j, c.clone())).collect();
                    t.sort_by_key(|(j, k, _)| (*j, *k));
                    t
                })
                .collect(),
            epsilon: self.epsilon.clone(),
        }
    }

    /// Checks coassociativity and both counit laws, reporting the first
    /// failing entry (by basis element, then tensor coordinate).
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        for i in 0..n {
            let mut left: BTreeMap<[usize; 3], Scalar> = BTreeMap::new();
            let mut right: BTreeMap<[usize; 3], Scalar> = BTreeMap::new();
            for (j, k, c) in &self.delta[i] {
                for (a, b, d) in &self.delta[*j] {
                    accumulate(&mut left, [*a, *b, *k], c * d);
                }
                for (a, b, d) in &self.delta[*k] {
                    accumulate(&mut right, [*j, *a, *b], c * d);
                }
            }
            let keys: std::collections::BTreeSet<[usize; 3]> = left.keys().chain(right.keys()).copied().collect();
            for key in keys {
                let l = left.get(&key).cloned().unwrap_or_else(|| self.field.zero());
                let r = right.get(&key).cloned().unwrap_or_else(|| self.field.zero());
                if l != r {
                    return AxiomReport {
                        failure: Some(AxiomFailure::Coassociativity { basis: i, entry: key, left: l, right: r }),
                    };
                }
            }
            // (ε ⊗ id)Δ(e_i) = e_i  and  (id ⊗ ε)Δ(e_i) = e_i
            let counit_left = SparseVec::from_pairs(self.delta[i].iter().map(|(j, k, c)| (*k, c * &self.epsilon[*j])));
            let counit_right = SparseVec::from_pairs(self.delta[i].iter().map(|(j, k, c)| (*j, c * &self.epsilon[*k])));
            let expected = SparseVec::unit(self.field, i);
            for (found, side) in [(counit_left, CounitSide::Left), (counit_right, CounitSide::Right)] {
                if let Some(entry) = first_difference(&found, &expected) {
                    return AxiomReport {
                        failure: Some(AxiomFailure::Counit {
                            side,
                            basis: i,
                            entry,
                            found: found.get(entry).cloned().unwrap_or_else(|| self.field.zero()),
                            expected: expected.get(entry).cloned().unwrap_or_else(|| self.field.zero()),
                        }),
                    };
                }
            }
        }
        AxiomReport { failure: None }
    }

    /// Errors with a readable diagnostic when the axioms fail.
    pub fn require_axioms(&self) -> Result<(), CoalgError> {
        match self.check_axioms().failure {
            None => Ok(()),
            Some(f) => Err(CoalgError::Axioms(f.describe(self))),
        }
    }

    pub fn is_grouplike(&self, i: usize) -> bool {
        self.delta[i].len() == 1
            && self.delta[i][0].0 == i
            && self.delta[i][0].1 == i
            && self.delta[i][0].2.is_one()
            && self.epsilon[i].is_one()
    }

    /// Basis elements with `Δe = e ⊗ e` and `ε(e) = 1`.
    pub fn grouplikes(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_grouplike(i)).collect()
    }

    pub fn grouplike_span(&self) -> Subspace {
        Subspace::coordinate(self.field, self.dim(), self.grouplikes())
    }

    pub fn dual_algebra(&self) -> Result<DualAlgebra, CoalgError> {
        self.require_axioms()?;
        Ok(DualAlgebra::from_coalgebra(self))
    }

    /// `C₀ = J^⊥` where `J` is the radical of the dual algebra.
    pub fn coradical(&self) -> Result<Subspace, CoalgError> {
        Ok(self.dual_algebra()?.radical()?.perp())
    }

    /// True when the coradical is spanned by grouplike basis elements.
    pub fn is_pointed(&self) -> Result<bool, CoalgError> {
        Ok(self.coradical()? == self.grouplike_span())
    }

    /// `C_n = (J^{n+1})^⊥` until the chain reaches `C`.
    pub fn coradical_filtration(&self) -> Result<FiltrationChain, CoalgError> {
        let dual = self.dual_algebra()?;
        let radical = dual.radical()?;
        FiltrationChain::from_annihilated_powers(&dual, &radical, |power| Ok::<_, CoalgError>(power.perp()))
    }

    fn check_subspace(&self, x: &Subspace) -> Result<(), CoalgError> {
        if x.ambient_dim() != self.dim() {
            return Err(CoalgError::AmbientMismatch { expected: self.dim(), found: x.ambient_dim() });
        }
        Ok(())
    }

    /// `X ⊗ Y` inside `K^{n²}`.
    pub fn tensor_subspace(&self, x: &Subspace, y: &Subspace) -> Subspace {
        let n = self.dim();
        let vectors = x.basis().iter().flat_map(|a| {
            y.basis().iter().map(move |b| {
                SparseVec::from_pairs(
                    a.iter()
                        .flat_map(|(j, u)| b.iter().map(move |(k, v)| (j * n + k, u * v))),
                )
            })
        });
        Subspace::span(self.field, n * n, vectors.collect::<Vec<_>>())
    }

    /// `X ∧ Y = Δ⁻¹(X ⊗ C + C ⊗ Y)`.
    pub fn wedge(&self, x: &Subspace, y: &Subspace) -> Result<Subspace, CoalgError> {
        self.check_subspace(x)?;
        self.check_subspace(y)?;
        let full = Subspace::full(self.field, self.dim());
        let target = self.tensor_subspace(x, &full).sum(&self.tensor_subspace(&full, y))?;
        Ok(preimage(&self.comultiplication(), &target)?)
    }

    pub fn satisfies(&self, x: &Subspace, kind: SubspaceKind) -> Result<bool, CoalgError> {
        self.check_subspace(x)?;
        let full = Subspace::full(self.field, self.dim());
        let target = match kind {
            SubspaceKind::Subcoalgebra => self.tensor_subspace(x, x),
            SubspaceKind::LeftCoideal => self.tensor_subspace(&full, x),
            SubspaceKind::RightCoideal => self.tensor_subspace(x, &full),
        };
        Ok(x.basis().iter().all(|v| target.contains_vector(&self.delta_of(v))))
    }

    pub fn is_subcoalgebra(&self, x: &Subspace) -> Result<bool, CoalgError> {
        self.satisfies(x, SubspaceKind::Subcoalgebra)
    }

    /// `{v : Δv = g ⊗ v + v ⊗ h}` for grouplike basis elements `g`, `h`.
    pub fn skew_primitives(&self, g: usize, h: usize) -> Result<Subspace, CoalgError> {
        let n = self.dim();
        for i in [g, h] {
            if i >= n {
                return Err(CoalgError::IndexOutOfRange { index: i, dim: n });
            }
            if !self.is_grouplike(i) {
                return Err(CoalgError::NotGrouplike(self.labels[i].clone()));
            }
        }
        let one = self.field.one();
        let columns: Vec<SparseVec> = (0..n)
            .map(|i| {
                let twisted = SparseVec::from_pairs([(g * n + i, one.clone()), (i * n + h, one.clone())]);
                self.delta_of(&SparseVec::unit(self.field, i)).sub(&twisted)
            })
            .collect();
        Ok(kernel_of(&Matrix::from_columns(self.field, n * n, &columns)))
    }

    /// Renders a vector as a linear combination of basis labels.
    pub fn format_vector(&self, v: &SparseVec) -> String {
        format_combination(&self.labels, v)
    }
}

fn canonical_terms(terms: Vec<TensorTerm>, n: usize) -> Result<Vec<TensorTerm>, CoalgError> {
    for (j, k, _) in &terms {
        for idx in [*j, *k] {
            if idx >= n {
                return Err(CoalgError::IndexOutOfRange { index: idx, dim: n });
            }
        }
    }
    let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (j, k, c) in terms {
        match map.get_mut(&(j, k)) {
            Some(acc) => *acc = &*acc + &c,
            None => {
                map.insert((j, k), c);
            }
        }
    }
    Ok(map
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((j, k), c)| (j, k, c))
        .collect())
}

fn accumulate(map: &mut BTreeMap<[usize; 3], Scalar>, key: [usize; 3], value: Scalar) {
    match map.get_mut(&key) {
        Some(acc) => *acc = &*acc + &value,
        None => {
            map.insert(key, value);
        }
    }
}

fn first_difference(a: &SparseVec, b: &SparseVec) -> Option<usize> {
    let d = a.sub(b);
    d.leading().map(|(i, _)| i)
}

/// `c₁·label₁ + c₂·label₂ + …`, with unit coefficients elided; `0` for zero.
pub fn format_combination(labels: &[String], v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format!("{magnitude}*"));
        }
        out.push_str(&labels[i]);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounitSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    /// Entry `(j, k, l)` of `(Δ⊗id)Δ(e_basis)` and `(id⊗Δ)Δ(e_basis)` differ.
    Coassociativity { basis: usize, entry: [usize; 3], left: Scalar, right: Scalar },
    Counit { side: CounitSide, basis: usize, entry: usize, found: Scalar, expected: Scalar },
}

impl AxiomFailure {
    pub fn describe(&self, c: &Coalgebra) -> String {
        match self {
            AxiomFailure::Coassociativity { basis, entry: [j, k, l], left, right } => format!(
                "coassociativity fails at Δ({}): coefficient of {}⊗{}⊗{} is {} in (Δ⊗id)Δ but {} in (id⊗Δ)Δ",
                c.label(*basis),
                c.label(*j),
                c.label(*k),
                c.label(*l),
                left,
                right
            ),
            AxiomFailure::Counit { side, basis, entry, found, expected } => {
                let law = match side {
                    CounitSide::Left => "(ε⊗id)Δ",
                    CounitSide::Right => "(id⊗ε)Δ",
                };
                format!(
                    "counit law fails at {law}({}): coefficient of {} is {} (expected {})",
                    c.label(*basis),
                    c.label(*entry),
                    found,
                    expected
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let terms: Vec<String> = self.delta[i]
                .iter()
                .map(|(j, k, c)| {
                    let coeff = if c.is_one() { String::new() } else { format!("{c}*") };
                    format!("{coeff}{}⊗{}", self.labels[*j], self.labels[*k])
                })
                .collect();
            writeln!(f, "Δ({}) = {}", self.labels[i], terms.join(" + "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    /// `span{g, x}` with `Δx = g⊗x + x⊗g`.
    pub fn divided_power() -> Coalgebra {
        Coalgebra::new(
            Field::Rational,
            vec!["g".into(), "x".into()],
            vec![vec![(0, 0, q(1))], vec![(0, 1, q(1)), (1, 0, q(1))]],
            vec![q(1), q(0)],
        )
        .unwrap()
    }

    /// Example coalgebra with grouplikes a, b and arrows x: a→b, y: b→a, p = xy.
    pub fn two_cycle(typo: bool) -> Coalgebra {
        let last = if typo { 1 } else { 0 };
        Coalgebra::new(
            Field::Rational,
            ["a", "b1", "x1", "y1", "p1"].iter().map(|s| s.to_string()).collect(),
            vec![
                vec![(0, 0, q(1))],
                vec![(1, 1, q(1))],
                vec![(0, 2, q(1)), (2, 1, q(1))],
                vec![(1, 3, q(1)), (3, 0, q(1))],
                vec![(0, 4, q(1)), (2, 3, q(1)), (4, last, q(1))],
            ],
            vec![q(1), q(1), q(0), q(0), q(0)],
        )
        .unwrap()
    }

    #[test]
    fn grouplike_passes_axioms() {
        let c = Coalgebra::new(Field::Rational, vec!["g".into()], vec![vec![(0, 0, q(1))]], vec![q(1)]).unwrap();
        assert!(c.check_axioms().passed());
        assert_eq!(c.grouplikes(), vec![0]);
    }

    #[test]
    fn printed_formula_fails_coassociativity() {
        assert!(two_cycle(false).check_axioms().passed());
        let mutant = two_cycle(true);
        let failure = mutant.check_axioms().failure.unwrap();
        assert_eq!(
            failure,
            AxiomFailure::Coassociativity { basis: 4, entry: [2, 3, 0], left: q(0), right: q(1) }
        );
        assert_eq!(
            failure.describe(&mutant),
            "coassociativity fails at Δ(p1): coefficient of x1⊗y1⊗a is 0 in (Δ⊗id)Δ but 1 in (id⊗Δ)Δ"
        );
    }

    #[test]
    fn counit_failure_is_reported() {
        let c = Coalgebra::new(Field::Rational, vec!["g".into()], vec![vec![(0, 0, q(1))]], vec![q(2)]).unwrap();
        assert!(matches!(c.check_axioms().failure, Some(AxiomFailure::Counit { .. })));
    }

    #[test]
    fn constructor_validates_shape() {
        assert!(matches!(
            Coalgebra::new(Field::Rational, vec!["g".into()], vec![vec![(0, 3, q(1))]], vec![q(1)]),
            Err(CoalgError::IndexOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            Coalgebra::new(Field::Rational, vec!["g".into(), "g".into()], vec![vec![], vec![]], vec![q(1), q(1)]),
            Err(CoalgError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn wedge_examples() {
        let c = two_cycle(false);
        let f = Field::Rational;
        let a = Subspace::coordinate(f, 5, [0]);
        assert_eq!(c.wedge(&a, &a).unwrap(), a);
        let full = Subspace::full(f, 5);
        assert_eq!(c.wedge(&full, &full).unwrap(), full);
        let c0 = Subspace::coordinate(f, 5, [0, 1]);
        assert_eq!(c.wedge(&c0, &c0).unwrap(), Subspace::coordinate(f, 5, [0, 1, 2, 3]));
    }

    #[test]
    fn predicates() {
        let c = two_cycle(false);
        let f = Field::Rational;
        let zero = Subspace::zero(f, 5);
        for kind in [SubspaceKind::Subcoalgebra, SubspaceKind::LeftCoideal, SubspaceKind::RightCoideal] {
            assert!(c.satisfies(&zero, kind).unwrap());
        }
        assert!(c.is_subcoalgebra(&c.grouplike_span()).unwrap());
        // Δx1 = a⊗x1 + x1⊗b1
        let ax = Subspace::coordinate(f, 5, [0, 2]);
        assert!(!c.is_subcoalgebra(&ax).unwrap());
        assert!(c.satisfies(&ax, SubspaceKind::RightCoideal).unwrap());
        assert!(!c.satisfies(&ax, SubspaceKind::LeftCoideal).unwrap());
        let xb = Subspace::coordinate(f, 5, [1, 2]);
        assert!(c.satisfies(&xb, SubspaceKind::LeftCoideal).unwrap());
        assert!(!c.satisfies(&xb, SubspaceKind::RightCoideal).unwrap());
    }

    #[test]
    fn skew_primitive_examples() {
        let c = two_cycle(false);
        let f = Field::Rational;
        assert!(c.skew_primitives(0, 0).unwrap().is_zero());
        let s = c.skew_primitives(0, 1).unwrap();
        let expected = Subspace::span(
            f,
            5,
            [SparseVec::unit(f, 2), SparseVec::from_pairs([(0, q(1)), (1, q(-1))])],
        );
        assert_eq!(s, expected);
        assert!(matches!(c.skew_primitives(0, 2), Err(CoalgError::NotGrouplike(_))));
    }

    #[test]
    fn co_opposite_swaps_tensor_factors() {
        let c = two_cycle(false);
        let cop = c.co_opposite();
        assert!(cop.check_axioms().passed());
        assert_eq!(cop.co_opposite(), c);
        assert_eq!(cop.delta(2), &[(1, 2, q(1)), (2, 0, q(1))]);
    }

    #[test]
    fn formats_combinations() {
        let c = two_cycle(false);
        let v = SparseVec::from_pairs([(0, q(1)), (1, q(-1)), (2, Field::Rational.parse_scalar("3/2").unwrap())]);
        assert_eq!(c.format_vector(&v), "a - b1 + 3/2*x1");
        assert_eq!(c.format_vector(&SparseVec::new()), "0");
    }
}
