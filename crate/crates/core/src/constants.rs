//! Plain-text structure constants for a finite coalgebra, optionally followed
//! by a comodule over it.
//!
//! ```text
//! # comments run to end of line
//! field rational            # optional: rational | gf:p | gf(p)
//! dim 2
//! label 0 g                 # optional; default labels are e0, e1, ...
//! label 1 x
//! delta 0: 0 0 1
//! delta 1: 0 1 1; 1 0 1     # Δ(e_1) = e_0⊗e_1 + e_1⊗e_0
//! epsilon: 1 0
//! comodule 1 right          # optional section
//! rho 0: 0 0 1              # right: c·m_j⊗e_k, left: c·e_j⊗m_k
//! ```
//!
//! Indices are zero-based; coefficients are integers or `num/den`. Missing
//! `delta`/`rho` lines mean zero. Axioms are not checked on load.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::coalg::{CoalgError, Coalgebra, TensorTerm};
use crate::comod::{ComodError, Comodule, Side};
use crate::exactlin::{Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Coalg(#[from] CoalgError),
    #[error(transparent)]
    Comod(#[from] ComodError),
}

/// Coaction terms in the comodule's own side convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComoduleConstants {
    pub side: Side,
    pub coaction: Vec<Vec<TensorTerm>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub coalgebra: Coalgebra,
    pub comodule: Option<ComoduleConstants>,
}

impl StructureConstants {
    pub fn comodule(&self, base: Arc<Coalgebra>) -> Result<Option<Comodule>, ComodError> {
        self.comodule
            .as_ref()
            .map(|m| Comodule::new(base, m.side, m.coaction.clone(), None))
            .transpose()
    }
}

/// True when `text` looks like a structure-constants file (first significant
/// line starts with `dim` or `field` followed later by `dim`).
pub fn looks_like_constants(text: &str) -> bool {
    text.lines()
        .map(strip_comment)
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("field"))
        .map(|l| l.split_whitespace().next() == Some("dim"))
        .next()
        .unwrap_or(false)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

struct Builder {
    field: Field,
    dim: Option<usize>,
    labels: Vec<Option<String>>,
    delta: Vec<Vec<TensorTerm>>,
    epsilon: Option<Vec<crate::exactlin::Scalar>>,
    comodule: Option<(usize, Side, Vec<Vec<TensorTerm>>)>,
}

/// Parses the format. `field_override` replaces any `field` line.
pub fn parse(text: &str, field_override: Option<Field>) -> Result<StructureConstants, LoadError> {
    let mut b = Builder { field: field_override.unwrap_or_default(), dim: None, labels: Vec::new(), delta: Vec::new(), epsilon: None, comodule: None };
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let err = |message: String| FormatError { line, message };
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = match content.split_once(|c: char| c.is_whitespace() || c == ':') {
            Some((h, r)) => (h, r.trim()),
            None => (content, ""),
        };
        match head {
            "field" => {
                if b.dim.is_some() {
                    return Err(err("`field` must precede `dim`".into()).into());
                }
                let f: Field = rest.parse().map_err(|e: FieldError| err(e.to_string()))?;
                if field_override.is_none() {
                    b.field = f;
                }
            }
            "dim" => {
                if b.dim.is_some() {
                    return Err(err("duplicate `dim`".into()).into());
                }
                let n = parse_index(rest).map_err(err)?;
                b.dim = Some(n);
                b.labels = vec![None; n];
                b.delta = vec![Vec::new(); n];
            }
            "label" => {
                let n = require_dim(&b, line)?;
                let mut parts = rest.split_whitespace();
                let i = parts.next().ok_or_else(|| err("expected `label <index> <name>`".into()))?;
                let i = bounded(parse_index(i).map_err(err)?, n, line)?;
                let name = parts.next().ok_or_else(|| err("expected `label <index> <name>`".into()))?;
                if parts.next().is_some() {
                    return Err(err("trailing input after label".into()).into());
                }
                b.labels[i] = Some(name.to_string());
            }
            "delta" => {
                let n = require_dim(&b, line)?;
                let (i, terms) = indexed_terms(rest, b.field, line)?;
                let i = bounded(i, n, line)?;
                for (j, k, _) in &terms {
                    bounded(*j, n, line)?;
                    bounded(*k, n, line)?;
                }
                b.delta[i].extend(terms);
            }
            "epsilon" => {
                let n = require_dim(&b, line)?;
                let rest = rest.strip_prefix(':').unwrap_or(rest);
                let values = rest
                    .split_whitespace()
                    .map(|v| b.field.parse_scalar(v).map_err(|e| err(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                if values.len() != n {
                    return Err(err(format!("epsilon needs {n} values, found {}", values.len())).into());
                }
                b.epsilon = Some(values);
            }
            "comodule" => {
                require_dim(&b, line)?;
                let mut parts = rest.split_whitespace();
                let m = parts.next().ok_or_else(|| err("expected `comodule <dim> left|right`".into()))?;
                let m = parse_index(m).map_err(err)?;
                let side: Side = parts
                    .next()
                    .ok_or_else(|| err("expected `comodule <dim> left|right`".into()))?
                    .parse()
                    .map_err(err)?;
                b.comodule = Some((m, side, vec![Vec::new(); m]));
            }
            "rho" => {
                let n = require_dim(&b, line)?;
                let (i, terms) = indexed_terms(rest, b.field, line)?;
                let Some((m, side, coaction)) = b.comodule.as_mut() else {
                    return Err(err("`rho` before `comodule`".into()).into());
                };
                let i = bounded(i, *m, line)?;
                for (j, k, _) in &terms {
                    let (module_index, coalgebra_index) = match side {
                        Side::Right => (*j, *k),
                        Side::Left => (*k, *j),
                    };
                    bounded(module_index, *m, line)?;
                    bounded(coalgebra_index, n, line)?;
                }
                coaction[i].extend(terms);
            }
            other => return Err(err(format!("unknown directive `{other}`")).into()),
        }
    }
    let last = text.lines().count().max(1);
    let n = b.dim.ok_or(FormatError { line: last, message: "missing `dim`".into() })?;
    let epsilon = b.epsilon.ok_or(FormatError { line: last, message: "missing `epsilon`".into() })?;
    let labels = b
        .labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.unwrap_or_else(|| format!("e{i}")))
        .collect();
    let coalgebra = Coalgebra::new(b.field, labels, b.delta, epsilon)?;
    debug_assert_eq!(coalgebra.dim(), n);
    let comodule = b.comodule.map(|(_, side, coaction)| ComoduleConstants { side, coaction });
    Ok(StructureConstants { coalgebra, comodule })
}

fn require_dim(b: &Builder, line: usize) -> Result<usize, FormatError> {
    b.dim.ok_or(FormatError { line, message: "`dim` must come first".into() })
}

fn bounded(i: usize, n: usize, line: usize) -> Result<usize, FormatError> {
    if i < n {
        Ok(i)
    } else {
        Err(FormatError { line, message: format!("index {i} out of range (dimension {n})") })
    }
}

fn parse_index(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("expected a non-negative integer, found `{}`", s.trim()))
}

/// `i: j k c; j k c; ...`
fn indexed_terms(rest: &str, field: Field, line: usize) -> Result<(usize, Vec<TensorTerm>), FormatError> {
    let err = |message: String| FormatError { line, message };
    let (i, body) = rest.split_once(':').ok_or_else(|| err("expected `<index>: j k coeff; ...`".into()))?;
    let i = parse_index(i).map_err(err)?;
    let mut terms = Vec::new();
    for chunk in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let parts: Vec<&str> = chunk.split_whitespace().collect();
        let [j, k, c] = parts.as_slice() else {
            return Err(err(format!("expected `j k coeff`, found `{chunk}`")));
        };
        let c = field.parse_scalar(c).map_err(|e| err(e.to_string()))?;
        terms.push((parse_index(j).map_err(err)?, parse_index(k).map_err(err)?, c));
    }
    Ok((i, terms))
}

/// Writes the format; `parse(write(c))` reproduces `c`.
pub fn write(c: &Coalgebra, comodule: Option<&Comodule>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", c.field());
    let _ = writeln!(out, "dim {}", c.dim());
    for (i, l) in c.labels().iter().enumerate() {
        let _ = writeln!(out, "label {i} {l}");
    }
    for i in 0..c.dim() {
        if !c.delta(i).is_empty() {
            let _ = writeln!(out, "delta {i}: {}", render_terms(c.delta(i).iter().cloned()));
        }
    }
    let eps: Vec<String> = c.epsilon().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "epsilon: {}", eps.join(" "));
    if let Some(m) = comodule {
        let _ = writeln!(out, "comodule {} {}", m.dim(), m.side());
        for i in 0..m.dim() {
            let terms = m.oriented_coaction(i).iter().map(|(j, k, c)| match m.side() {
                Side::Right => (*j, *k, c.clone()),
                Side::Left => (*k, *j, c.clone()),
            });
            if !m.oriented_coaction(i).is_empty() {
                let _ = writeln!(out, "rho {i}: {}", render_terms(terms));
            }
        }
    }
    out
}

fn render_terms(terms: impl Iterator<Item = TensorTerm>) -> String {
    terms.map(|(j, k, c)| format!("{j} {k} {c}")).collect::<Vec<_>>().join("; ")
}
