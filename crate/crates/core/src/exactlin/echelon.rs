//! Reduced row-echelon forms.
//!
//! Narrow systems (fewer than [`DENSE_CUTOFF`] columns) are reduced with a
//! dense Gauss-Jordan sweep; wider ones with an incremental sparse reducer.
//! Both produce the unique reduced row-echelon basis of the row space.

use super::field::{Field, Scalar};
use super::sparse::{Matrix, SparseVec};

/// Column count below which elimination switches to dense storage.
pub const DENSE_CUTOFF: usize = 64;

/// Nonzero rows of the reduced row-echelon form, sorted by pivot column.
pub fn rref(field: Field, cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    if cols < DENSE_CUTOFF {
        rref_dense(field, cols, rows)
    } else {
        rref_sparse(field, rows)
    }
}

/// Dense Gauss-Jordan.
pub fn rref_dense(field: Field, cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut m: Vec<Vec<Scalar>> = rows
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.to_dense(field, cols))
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        for x in m[rank].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.iter().map(|r| SparseVec::from_dense(r)).collect()
}

/// Incremental sparse reduction: each incoming row is reduced against the
/// current basis, normalised, and then eliminated from the existing rows.
pub fn rref_sparse(_field: Field, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut basis: Vec<SparseVec> = Vec::new();
    // pivot column -> position in `basis`
    let mut pivots: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for row in rows {
        let reduced = reduce_against(&basis, &pivots, &row);
        let Some((lead, lead_val)) = reduced.leading() else {
            continue;
        };
        let normalised = reduced.scale(&lead_val.inv().expect("nonzero lead"));
        for b in basis.iter_mut() {
            if let Some(c) = b.get(lead).cloned() {
                *b = b.add_scaled(&-c, &normalised);
            }
        }
        pivots.insert(lead, basis.len());
        basis.push(normalised);
    }
    let mut out: Vec<(usize, SparseVec)> = pivots
        .into_iter()
        .map(|(p, idx)| (p, std::mem::take(&mut basis[idx])))
        .collect();
    out.sort_by_key(|(p, _)| *p);
    out.into_iter().map(|(_, r)| r).collect()
}

/// Subtracts from `v` its components along a reduced basis. Because the
/// basis rows vanish at each other's pivots, the coefficient for pivot `p`
/// is just the original `v[p]`.
fn reduce_against(
    basis: &[SparseVec],
    pivots: &std::collections::BTreeMap<usize, usize>,
    v: &SparseVec,
) -> SparseVec {
    let mut out = v.clone();
    for (i, c) in v.iter() {
        if let Some(&idx) = pivots.get(&i) {
            out = out.add_scaled(&-c, &basis[idx]);
        }
    }
    out
}

/// Reduces `v` modulo the row space of an RREF basis.
pub fn reduce_by_rref(rref_rows: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = v.clone();
    for row in rref_rows {
        let (p, _) = row.leading().expect("rref rows are nonzero");
        if let Some(c) = v.get(p) {
            out = out.add_scaled(&-c, row);
        }
    }
    out
}

/// Basis of `{x : m x = 0}`, in reduced row-echelon form.
pub fn kernel(m: &Matrix) -> Vec<SparseVec> {
    let field = m.field();
    let cols = m.ncols();
    let r = rref(field, cols, m.rows().iter().cloned());
    nullspace_of_rref(field, cols, &r)
}

/// Kernel of a matrix already in RREF: one vector per free column.
pub fn nullspace_of_rref(field: Field, cols: usize, r: &[SparseVec]) -> Vec<SparseVec> {
    let pivot_cols: Vec<usize> = r.iter().map(|row| row.leading().unwrap().0).collect();
    let mut is_pivot = vec![false; cols];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let vectors = (0..cols).filter(|&f| !is_pivot[f]).map(|f| {
        let mut pairs = vec![(f, field.one())];
        for (row, &p) in r.iter().zip(&pivot_cols) {
            if let Some(c) = row.get(f) {
                pairs.push((p, -c));
            }
        }
        SparseVec::from_pairs(pairs)
    });
    rref(field, cols, vectors.collect::<Vec<_>>())
}
