//! Quiver-presented path subcoalgebras: a small DSL, path enumeration, a
//! compiler to finite truncations and the combinatorial verdict engine.

pub mod builtin;
mod degrees;
mod dsl;
mod paths;
mod verdicts;

use thiserror::Error;

use crate::coalg::CoalgError;
use crate::comod::ComodError;
use crate::exactlin::LinAlgError;

pub use degrees::{degree_tables, witnessed_growth, DegreeTables, PairMultiplicity, Sample, VertexDegrees};
pub use dsl::{label_for, parse_spec, Arrow, NamedPath, PathMode, Quiver, QuiverSpec, Vertex};
pub use paths::{compile, enumerate_paths, is_cyclic, paths_of, Path, PathBasis, Truncation};
pub use verdicts::{
    fnoetherian_witness, injective_indecomposable, locally_finite_verdict, semiperfect_verdict,
    torsion_rat_verdict, AnalysisOptions, GrowthRow, InjectiveHull, SweepResult, SweepTable, Verdict,
    VerdictEntry, VerdictReport, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("line {line}: path `{path}` needs `{missing}`, which is not declared")]
    Closure { line: usize, path: String, missing: String },
    #[error("line {line}: arrow `{arrow}` has undeclared endpoint `{endpoint}`")]
    Dangling { line: usize, arrow: String, endpoint: String },
    #[error("line {line}: path `{path}` does not compose at `{at}`")]
    NotComposable { line: usize, path: String, at: String },
    #[error("line {line}: label `{label}` is already in use")]
    DuplicateLabel { line: usize, label: String },
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("the quiver has a cycle; all-paths mode needs a depth bound")]
    CyclicWithoutDepth,
    #[error("{0}")]
    InvalidBound(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Coalg(#[from] CoalgError),
    #[error(transparent)]
    Comod(#[from] ComodError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
