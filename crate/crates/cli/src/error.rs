use qcalg_core::coalg::CoalgError;
use qcalg_core::comod::ComodError;
use qcalg_core::constants::LoadError;
use qcalg_core::exactlin::{FieldError, LinAlgError};
use qcalg_core::quiverlab::QuiverError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXPECT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("`{0}` is neither a built-in example nor a readable file")]
    UnknownInput(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Coalg(#[from] CoalgError),
    #[error(transparent)]
    Comod(#[from] ComodError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("{0}")]
    Argument(String),
    #[error("{0}")]
    Axioms(String),
    #[error("expectation file `{path}`, line {line}: {message}")]
    ExpectFormat { path: String, line: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn linalg_is_internal(_: &LinAlgError) -> bool {
    true
}

fn coalg_is_internal(e: &CoalgError) -> bool {
    match e {
        CoalgError::AmbientMismatch { .. } => true,
        CoalgError::LinAlg(inner) => linalg_is_internal(inner),
        _ => false,
    }
}

fn comod_is_internal(e: &ComodError) -> bool {
    match e {
        ComodError::BaseMismatch | ComodError::DimensionMismatch { .. } => true,
        ComodError::Coalg(inner) => coalg_is_internal(inner),
        ComodError::LinAlg(inner) => linalg_is_internal(inner),
        _ => false,
    }
}

impl CliError {
    pub fn is_internal(&self) -> bool {
        match self {
            CliError::Internal(_) => true,
            CliError::LinAlg(e) => linalg_is_internal(e),
            CliError::Quiver(QuiverError::Invariant(_)) => true,
            CliError::Quiver(QuiverError::Coalg(e)) | CliError::Coalg(e) => coalg_is_internal(e),
            CliError::Quiver(QuiverError::Comod(e)) | CliError::Comod(e) => comod_is_internal(e),
            CliError::Quiver(QuiverError::LinAlg(e)) => linalg_is_internal(e),
            CliError::Load(LoadError::Coalg(e)) => coalg_is_internal(e),
            CliError::Load(LoadError::Comod(e)) => comod_is_internal(e),
            _ => false,
        }
    }

    fn is_axiom_failure(&self) -> bool {
        let coalg = match self {
            CliError::Axioms(_) => return true,
            CliError::Coalg(e) | CliError::Quiver(QuiverError::Coalg(e)) | CliError::Load(LoadError::Coalg(e)) => e,
            CliError::Comod(ComodError::Coalg(e)) | CliError::Quiver(QuiverError::Comod(ComodError::Coalg(e))) => e,
            _ => return false,
        };
        matches!(coalg, CoalgError::Axioms(_))
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_internal() {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        }
    }

    /// Stable machine-readable category.
    pub fn kind(&self) -> &'static str {
        if self.is_internal() {
            return "internal";
        }
        if self.is_axiom_failure() {
            return "axioms";
        }
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::UnknownInput(_) => "unknown-input",
            CliError::Quiver(e) => match e {
                QuiverError::Syntax { .. } => "parse",
                QuiverError::Closure { .. } => "closure",
                QuiverError::Dangling { .. } => "dangling-endpoint",
                QuiverError::NotComposable { .. } => "not-composable",
                QuiverError::DuplicateLabel { .. } => "duplicate-label",
                QuiverError::UnknownParam(_) | QuiverError::InvalidBound(_) => "argument",
                QuiverError::UnknownVertex(_) | QuiverError::UnknownLabel(_) => "unknown-label",
                QuiverError::CyclicWithoutDepth => "needs-depth",
                _ => "computation",
            },
            CliError::Load(LoadError::Format(_)) => "parse",
            CliError::Load(_) => "invalid-structure",
            CliError::Coalg(_) | CliError::Comod(_) => "computation",
            CliError::Field(_) => "argument",
            CliError::Argument(_) => "argument",
            CliError::Axioms(_) => "axioms",
            CliError::ExpectFormat { .. } => "expect-format",
            CliError::Internal(_) | CliError::LinAlg(_) => "internal",
        }
    }

    pub fn location(&self) -> (Option<usize>, Option<usize>) {
        match self {
            CliError::Quiver(QuiverError::Syntax { line, col, .. }) => (Some(*line), Some(*col)),
            CliError::Quiver(
                QuiverError::Closure { line, .. }
                | QuiverError::Dangling { line, .. }
                | QuiverError::NotComposable { line, .. }
                | QuiverError::DuplicateLabel { line, .. },
            ) => (Some(*line), None),
            CliError::Load(LoadError::Format(f)) => (Some(f.line), None),
            CliError::ExpectFormat { line, .. } => (Some(*line), None),
            _ => (None, None),
        }
    }

    pub fn to_document(&self) -> ErrorDocument {
        let (line, column) = self.location();
        ErrorDocument {
            schema: ERROR_SCHEMA.to_string(),
            error: ErrorBody {
                kind: self.kind().to_string(),
                message: self.to_string(),
                line,
                column,
                exit_code: self.exit_code(),
            },
        }
    }
}

pub const ERROR_SCHEMA: &str = "qcalg.error.v1";

/// JSON Schema describing [`ErrorDocument`].
pub const ERROR_SCHEMA_DOCUMENT: &str = include_str!("../schema/error.v1.json");

/// What `--json` prints instead of a report when a command fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDocument {
    pub schema: String,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub exit_code: i32,
}
