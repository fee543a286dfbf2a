use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::coalg::{Coalgebra, TensorTerm};
use crate::exactlin::{SparseVec, Subspace};

use super::dsl::{PathMode, Quiver, QuiverSpec};
use super::QuiverError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub label: String,
    pub source: usize,
    pub target: usize,
    /// Arrow indices in traversal order; empty for a vertex.
    pub arrows: Vec<usize>,
}

impl Path {
    /// Number of arrows.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Admissible paths sorted by length, then by label in natural order
/// (`b2` before `b10`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathBasis {
    pub paths: Vec<Path>,
    #[serde(skip)]
    index: HashMap<(usize, Vec<usize>), usize>,
}

fn canonical_order(a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| natural_cmp(&a.label, &b.label))
}

/// Compares runs of digits numerically and everything else bytewise.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, u), (true, v)) => {
                let (u, v) = (u.trim_start_matches('0'), v.trim_start_matches('0'));
                u.len().cmp(&v.len()).then_with(|| u.cmp(v))
            }
            ((_, u), (_, v)) => u.cmp(v),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

impl PathBasis {
    fn new(mut paths: Vec<Path>) -> Self {
        paths.sort_by(canonical_order);
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        PathBasis { paths, index }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.paths.iter().map(|p| p.label.clone()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.paths.iter().position(|p| p.label == label)
    }

    fn locate(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// Paths starting at vertex `v`.
    pub fn starting_at(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.paths[i].source == v).collect()
    }

    /// Paths ending at vertex `v`.
    pub fn ending_at(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.paths[i].target == v).collect()
    }

    /// One line per path: `index<TAB>length<TAB>label<TAB>source<TAB>target`.
    pub fn canonical_text(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, p) in self.paths.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i}\t{}\t{}\t{}\t{}",
                p.len(),
                p.label,
                quiver.vertices[p.source].label,
                quiver.vertices[p.target].label
            );
        }
        out
    }
}

fn walk_label(quiver: &Quiver, arrows: &[usize], named: &HashMap<&[usize], &str>) -> String {
    if let Some(name) = named.get(arrows) {
        return name.to_string();
    }
    arrows
        .iter()
        .map(|&a| quiver.arrows[a].label.as_str())
        .collect::<Vec<_>>()
        .join(".")
}

pub fn is_cyclic(quiver: &Quiver) -> bool {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = quiver.vertices.iter().map(|_| g.add_node(())).collect();
    for a in &quiver.arrows {
        g.add_edge(nodes[a.source], nodes[a.target], ());
    }
    is_cyclic_directed(&g)
}

/// All admissible paths of length at most `depth` (unbounded when `None`).
pub fn paths_of(quiver: &Quiver, depth: Option<usize>) -> Result<PathBasis, QuiverError> {
    let limit = depth.unwrap_or(usize::MAX);
    let mut paths: Vec<Path> = quiver
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| Path { label: v.label.clone(), source: i, target: i, arrows: Vec::new() })
        .collect();
    if limit >= 1 {
        paths.extend(quiver.arrows.iter().enumerate().map(|(i, a)| Path {
            label: a.label.clone(),
            source: a.source,
            target: a.target,
            arrows: vec![i],
        }));
    }
    match quiver.mode {
        PathMode::Declared => {
            paths.extend(quiver.paths.iter().filter(|p| p.arrows.len() <= limit).map(|p| Path {
                label: p.label.clone(),
                source: quiver.arrows[p.arrows[0]].source,
                target: quiver.arrows[*p.arrows.last().expect("nonempty")].target,
                arrows: p.arrows.clone(),
            }));
        }
        PathMode::All => {
            if depth.is_none() && is_cyclic(quiver) {
                return Err(QuiverError::CyclicWithoutDepth);
            }
            let named: HashMap<&[usize], &str> =
                quiver.paths.iter().map(|p| (p.arrows.as_slice(), p.label.as_str())).collect();
            let mut frontier: Vec<Vec<usize>> = (0..quiver.arrows.len()).map(|a| vec![a]).collect();
            let mut length = 1;
            while length < limit && !frontier.is_empty() {
                let mut next = Vec::new();
                for walk in &frontier {
                    let end = quiver.arrows[*walk.last().expect("nonempty")].target;
                    for (a, arrow) in quiver.arrows.iter().enumerate() {
                        if arrow.source == end {
                            let mut w = walk.clone();
                            w.push(a);
                            next.push(w);
                        }
                    }
                }
                for w in &next {
                    paths.push(Path {
                        label: walk_label(quiver, w, &named),
                        source: quiver.arrows[w[0]].source,
                        target: quiver.arrows[*w.last().expect("nonempty")].target,
                        arrows: w.clone(),
                    });
                }
                frontier = next;
                length += 1;
            }
        }
    }
    Ok(PathBasis::new(paths))
}

/// `enumerate_paths(spec, N, depth)`: the admissible paths of the instance
/// with family bound `n`.
pub fn enumerate_paths(spec: &QuiverSpec, n: Option<usize>, depth: Option<usize>) -> Result<PathBasis, QuiverError> {
    check_bound(n)?;
    paths_of(&spec.instantiate(n)?, depth)
}

fn check_bound(n: Option<usize>) -> Result<(), QuiverError> {
    match n {
        Some(0) => Err(QuiverError::InvalidBound("family bound must be at least 1".into())),
        _ => Ok(()),
    }
}

/// A compiled finite truncation.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub bound: Option<usize>,
    pub depth: Option<usize>,
    pub quiver: Quiver,
    pub basis: PathBasis,
    pub coalgebra: Arc<Coalgebra>,
}

/// Builds the path subcoalgebra: `Δ(p) = Σ_{p = q·r} q ⊗ r` over all
/// splittings (with trivial vertex paths at both ends), `ε` = 1 on vertices.
pub fn compile(spec: &QuiverSpec, n: Option<usize>, depth: Option<usize>) -> Result<Truncation, QuiverError> {
    check_bound(n)?;
    let quiver = spec.instantiate(n)?;
    let basis = paths_of(&quiver, depth)?;
    let field = quiver.field;
    let one = field.one();
    let lookup = |source: usize, arrows: &[usize]| -> usize {
        basis.locate(source, arrows).expect("admissible paths are closed under subpaths")
    };
    let mut delta: Vec<Vec<TensorTerm>> = Vec::with_capacity(basis.len());
    for p in &basis.paths {
        let mut terms = Vec::with_capacity(p.len() + 1);
        for cut in 0..=p.len() {
            let (head, tail) = p.arrows.split_at(cut);
            let middle = if cut == 0 { p.source } else { quiver.arrows[head[cut - 1]].target };
            terms.push((lookup(p.source, head), lookup(middle, tail), one.clone()));
        }
        delta.push(terms);
    }
    let epsilon = basis
        .paths
        .iter()
        .map(|p| if p.is_vertex() { field.one() } else { field.zero() })
        .collect();
    let coalgebra = Coalgebra::new(field, basis.labels(), delta, epsilon)?;
    Ok(Truncation { bound: n, depth, quiver, basis, coalgebra: Arc::new(coalgebra) })
}

impl Truncation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span_of(&self, indices: impl IntoIterator<Item = usize>) -> Subspace {
        Subspace::coordinate(self.coalgebra.field(), self.dim(), indices)
    }

    pub fn span_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subspace, QuiverError> {
        let indices = labels
            .iter()
            .map(|l| {
                self.basis
                    .position(l.as_ref())
                    .ok_or_else(|| QuiverError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.span_of(indices))
    }

    pub fn vertex_span(&self) -> Subspace {
        self.span_of((0..self.dim()).filter(|&i| self.basis.paths[i].is_vertex()))
    }

    /// Span of the paths of length at most `k`.
    pub fn length_span(&self, k: usize) -> Subspace {
        self.span_of((0..self.dim()).filter(|&i| self.basis.paths[i].len() <= k))
    }

    /// Span of the paths all of whose vertices and arrows are either
    /// unindexed or carry `n` as their first family index.
    pub fn family_slice(&self, n: i64) -> Subspace {
        let fits = |indices: &[i64]| indices.first().is_none_or(|&i| i == n);
        self.span_of((0..self.dim()).filter(|&i| {
            let p = &self.basis.paths[i];
            fits(&self.quiver.vertices[p.source].indices)
                && p.arrows.iter().all(|&a| {
                    let arrow = &self.quiver.arrows[a];
                    fits(&arrow.indices) && fits(&self.quiver.vertices[arrow.target].indices)
                })
        }))
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, QuiverError> {
        self.quiver.vertex(label).ok_or_else(|| QuiverError::UnknownVertex(label.to_string()))
    }

    /// Basis position of the trivial path at a vertex.
    pub fn vertex_position(&self, label: &str) -> Result<usize, QuiverError> {
        let v = self.vertex_index(label)?;
        Ok(self.basis.locate(v, &[]).expect("vertices are always admissible"))
    }

    pub fn unit(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.coalgebra.field(), i)
    }
}
