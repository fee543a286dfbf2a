//! Sparse coordinate vectors and row-major sparse matrices.

use std::cmp::Ordering;

use super::field::{Field, Scalar};

/// A coordinate vector stored as `(index, value)` pairs, sorted by index,
/// with no explicit zeros. The ambient dimension is tracked by the owner.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Basis vector `e_i`.
    pub fn unit(field: Field, i: usize) -> Self {
        SparseVec {
            entries: vec![(i, field.one())],
        }
    }

    /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut entries: Vec<(usize, Scalar)> = pairs.into_iter().collect();
        entries.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: merged }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: Field, dim: usize) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    /// First nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    /// Largest index with a nonzero entry.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => match i.cmp(j) {
                    Ordering::Less => {
                        out.push((*i, x.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((*j, c * y));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(&v.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(&-v.field().one(), other),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            match i.cmp(j) {
                Ordering::Less => {
                    a.next();
                }
                Ordering::Greater => {
                    b.next();
                }
                Ordering::Equal => {
                    let p = x * y;
                    acc = Some(match acc {
                        Some(s) => &s + &p,
                        None => p,
                    });
                    a.next();
                    b.next();
                }
            }
        }
        acc
    }

    /// Dot product that returns an explicit zero when the supports are disjoint.
    pub fn dot_in(&self, field: Field, other: &SparseVec) -> Scalar {
        self.dot(other).unwrap_or_else(|| field.zero())
    }

    /// Re-indexes entries through `f`; pairs mapping to `None` are dropped.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))),
        )
    }
}

/// A sparse matrix stored row by row. Viewed as a linear map it sends the
/// `cols`-dimensional domain to the `rows`-dimensional codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix {
            field,
            cols: n,
            rows: (0..n).map(|i| SparseVec::unit(field, i)).collect(),
        }
    }

    /// Panics if a row has an entry beyond `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some(m) = r.max_index() {
                assert!(m < cols, "row entry {m} out of range for {cols} columns");
            }
        }
        Matrix { field, cols, rows }
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                assert!(i < rows, "column entry {i} out of range for {rows} rows");
                buckets[i].push((j, v.clone()));
            }
        }
        Matrix {
            field,
            cols: columns.len(),
            rows: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(j < self.cols);
        let mut pairs: Vec<(usize, Scalar)> = self.rows[i]
            .iter()
            .filter(|(k, _)| *k != j)
            .map(|(k, v)| (k, v.clone()))
            .collect();
        pairs.push((j, value));
        self.rows[i] = SparseVec::from_pairs(pairs);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SparseVec::is_zero)
    }

    /// Applies the map to a domain vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.dot(v).map(|s| (i, s))),
        )
    }

    pub fn transpose(&self) -> Matrix {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                buckets[j].push((i, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            cols: self.rows.len(),
            rows: buckets.into_iter().map(|b| SparseVec { entries: b }).collect(),
        }
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter().fold(SparseVec::new(), |acc, (k, v)| {
                    acc.add_scaled(v, other.row(k))
                })
            })
            .collect();
        Matrix {
            field: self.field,
            cols: other.cols,
            rows,
        }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    /// Stacks the rows of several matrices with equal column counts.
    pub fn stack(field: Field, cols: usize, parts: &[Matrix]) -> Matrix {
        let rows = parts
            .iter()
            .flat_map(|m| {
                assert_eq!(m.cols, cols, "column mismatch in stack");
                m.rows.iter().cloned()
            })
            .collect();
        Matrix { field, cols, rows }
    }
}
