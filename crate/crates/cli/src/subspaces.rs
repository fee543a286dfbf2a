//! Named subspaces on the command line: comma-separated terms, each a basis
//! label, `C<k>` (coradical filtration term), `V<n>` (family slice of a
//! quiver truncation), `all` or `0`. Basis labels take precedence.

use qcalg_core::exactlin::{SparseVec, Subspace};

use crate::error::CliError;
use crate::input::Model;

pub fn resolve(model: &Model, expr: &str) -> Result<Subspace, CliError> {
    let c = &model.coalgebra;
    let mut acc = Subspace::zero(c.field(), c.dim());
    let terms: Vec<&str> = expr.split(',').map(str::trim).collect();
    if terms.iter().any(|t| t.is_empty()) {
        return Err(CliError::Argument(format!("empty term in subspace `{expr}`")));
    }
    for term in terms {
        let part = term_space(model, term)?;
        acc = acc.sum(&part).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(acc)
}

fn numeric_suffix(term: &str, prefix: char) -> Option<usize> {
    let rest = term.strip_prefix(prefix)?;
    (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())).then(|| rest.parse().ok()).flatten()
}

fn term_space(model: &Model, term: &str) -> Result<Subspace, CliError> {
    let c = &model.coalgebra;
    if let Ok(i) = c.index_of(term) {
        return Ok(Subspace::span(c.field(), c.dim(), [SparseVec::unit(c.field(), i)]));
    }
    if term == "all" {
        return Ok(Subspace::full(c.field(), c.dim()));
    }
    if term == "0" {
        return Ok(Subspace::zero(c.field(), c.dim()));
    }
    if let Some(k) = numeric_suffix(term, 'C') {
        let chain = c.coradical_filtration()?;
        let last = chain.terms.len().saturating_sub(1);
        return Ok(chain.terms[k.min(last)].clone());
    }
    if let Some(n) = numeric_suffix(term, 'V') {
        let t = model
            .truncation
            .as_ref()
            .ok_or_else(|| CliError::Argument(format!("`{term}` needs a quiver input")))?;
        let _ = t;
        let bound = model.bound().unwrap_or(0);
        if n == 0 || n > bound {
            return Err(CliError::Argument(format!("`{term}` is outside the family range 1..{bound}")));
        }
        return Ok(t.family_slice(n as i64));
    }
    Err(CliError::Argument(format!("unknown basis label or subspace name `{term}`")))
}
