use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactlin::{kernel_of, Matrix, Scalar, SparseVec, Subspace};

use super::{ComodError, Comodule};

/// `Hom^C(N, M)` as a list of `dim M × dim N` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `ρ_M ∘ φ = (φ ⊗ id) ∘ ρ_N` for `φ: N → M`. The unknown `φ[r][s]`
/// sits at index `r·dim N + s`; equation `(i, j, k)` is the coefficient of
/// `m_j ⊗ e_k` evaluated on `n_i`.
pub fn hom_space(source: &Comodule, target: &Comodule) -> Result<HomSpace, ComodError> {
    source.compatible(target)?;
    let (dn, dm, nc) = (source.dim(), target.dim(), source.base.dim());
    let field = source.field();
    let mut equations: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    let eq = |i: usize, j: usize, k: usize| (i * dm + j) * nc + k;
    for i in 0..dn {
        for r in 0..dm {
            for (j, k, c) in target.oriented_coaction(r) {
                equations.entry(eq(i, *j, *k)).or_default().push((r * dn + i, c.clone()));
            }
        }
        for (s, k, c) in source.oriented_coaction(i) {
            let neg = -c;
            for j in 0..dm {
                equations.entry(eq(i, j, *k)).or_default().push((j * dn + s, neg.clone()));
            }
        }
    }
    let rows = equations.into_values().map(SparseVec::from_pairs).collect();
    let solutions = kernel_of(&Matrix::from_rows(field, dm * dn, rows));
    let basis = solutions
        .basis()
        .iter()
        .map(|v| {
            let rows = (0..dm)
                .map(|r| SparseVec::from_pairs(v.iter().filter(|(u, _)| u / dn.max(1) == r).map(|(u, c)| (u % dn, c.clone()))))
                .collect();
            Matrix::from_rows(field, dn, rows)
        })
        .collect();
    Ok(HomSpace { source_dim: dn, target_dim: dm, basis })
}

/// True when `map` (a `dim target × dim source` matrix) intertwines the
/// coactions.
pub fn is_comodule_map(source: &Comodule, target: &Comodule, map: &Matrix) -> Result<bool, ComodError> {
    source.compatible(target)?;
    if map.nrows() != target.dim() || map.ncols() != source.dim() {
        return Err(ComodError::DimensionMismatch { expected: target.dim() * source.dim(), found: map.nrows() * map.ncols() });
    }
    let columns = map.columns();
    for i in 0..source.dim() {
        let mut lhs: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (k, slice) in target.coaction_slices(&columns[i]) {
            lhs.insert(k, slice.entries().to_vec());
        }
        let mut rhs: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (s, k, c) in source.oriented_coaction(i) {
            rhs.entry(*k)
                .or_default()
                .extend(columns[*s].iter().map(|(j, a)| (j, a * c)));
        }
        let keys: std::collections::BTreeSet<usize> = lhs.keys().chain(rhs.keys()).copied().collect();
        for k in keys {
            let l = SparseVec::from_pairs(lhs.remove(&k).unwrap_or_default());
            let r = SparseVec::from_pairs(rhs.remove(&k).unwrap_or_default());
            if !l.sub(&r).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_{φ ∈ Hom(P, M)} φ(P)`.
pub fn hom_image_sum(source: &Comodule, target: &Comodule) -> Result<Subspace, ComodError> {
    let hom = hom_space(source, target)?;
    Ok(Subspace::span(
        target.field(),
        target.dim(),
        hom.basis.iter().flat_map(|phi| phi.columns()),
    ))
}

/// Multiplicities of the grouplike simples in the socle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    pub entries: BTreeMap<String, usize>,
}

impl MultiplicityTable {
    /// `Σ mult(S) · dim S`; every grouplike simple is one-dimensional.
    pub fn weighted_total(&self) -> usize {
        self.entries.values().sum()
    }
}

/// Two independent computations of `J · M*` inside `M* ≅ K^{dim M}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalImageCheck {
    /// Span of the rows of `A_f` for `f` running over a basis of `J`.
    pub via_action: Subspace,
    /// Orthogonal complement of the socle assembled from simple images.
    pub via_socle: Subspace,
}

impl RadicalImageCheck {
    pub fn holds(&self) -> bool {
        self.via_action == self.via_socle
    }
}

/// For `M` embedded in a finite power of the regular comodule over a pointed
/// coalgebra, compares `J·M*` with `(soc M)^⊥`. `embedding` must be an
/// injective comodule map `M → C^k`, given as a `(k · dim C) × dim M` matrix.
pub fn radical_image_check(m: &Comodule, embedding: &Matrix) -> Result<RadicalImageCheck, ComodError> {
    let base = m.base();
    if !base.is_pointed()? {
        return Err(ComodError::NotPointed);
    }
    let n = base.dim();
    if n == 0 || !embedding.nrows().is_multiple_of(n) || embedding.ncols() != m.dim() {
        return Err(ComodError::InvalidEmbedding(format!(
            "expected a (k·{n}) × {} matrix, found {} × {}",
            m.dim(),
            embedding.nrows(),
            embedding.ncols()
        )));
    }
    if !kernel_of(embedding).is_zero() {
        return Err(ComodError::InvalidEmbedding("map is not injective".into()));
    }
    let ambient = Comodule::regular(base.clone(), m.side()).power(embedding.nrows() / n)?;
    if !is_comodule_map(m, &ambient, embedding)? {
        return Err(ComodError::InvalidEmbedding("map does not commute with the coactions".into()));
    }
    let radical = base.dual_algebra()?.radical()?;
    let mut rows = Vec::new();
    for f in radical.basis() {
        rows.extend(m.dual_action(f)?.rows().iter().cloned());
    }
    let via_action = Subspace::span(m.field(), m.dim(), rows);
    let via_socle = m.socle_from_simples()?.perp();
    Ok(RadicalImageCheck { via_action, via_socle })
}

impl Comodule {
    /// `dim Hom(S_g, M) / dim End(S_g)` for the grouplike simple `S_g`.
    pub fn multiplicity(&self, label: &str) -> Result<usize, ComodError> {
        let simple = Comodule::simple(self.base.clone(), self.side, label)?;
        let hom = hom_space(&simple, self)?.dim();
        let end = hom_space(&simple, &simple)?.dim();
        Ok(hom / end)
    }

    pub fn multiplicity_table(&self) -> Result<MultiplicityTable, ComodError> {
        let mut entries = BTreeMap::new();
        for g in self.base.grouplikes() {
            let label = self.base.label(g).to_string();
            let mult = self.multiplicity(&label)?;
            entries.insert(label, mult);
        }
        Ok(MultiplicityTable { entries })
    }

    /// `Σ_g Σ_{φ ∈ Hom(S_g, M)} φ(S_g)`: the socle of `M` when the base is
    /// pointed, computed without the dual algebra.
    pub fn socle_from_simples(&self) -> Result<Subspace, ComodError> {
        let mut acc = Subspace::zero(self.field(), self.dim());
        for g in self.base.grouplikes() {
            let simple = Comodule::simple(self.base.clone(), self.side, self.base.label(g))?;
            acc = acc.sum(&hom_image_sum(&simple, self)?)?;
        }
        Ok(acc)
    }
}
