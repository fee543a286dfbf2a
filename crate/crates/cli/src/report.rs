//! The versioned JSON report.

use std::collections::BTreeMap;

use qcalg_core::quiverlab::{DegreeTables, SweepTable, VerdictEntry};
use serde::{Deserialize, Serialize};

use crate::exact::Exact;

pub const SCHEMA_VERSION: &str = "qcalg.report.v1";

/// JSON Schema describing [`ReportDocument`].
pub const SCHEMA_DOCUMENT: &str = include_str!("../schema/report.v1.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: String,
    pub tool: Tool,
    pub input: InputInfo,
    pub parameters: Parameters,
    pub results: Results,
    pub expectations: Option<ExpectOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: "qcalg".into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    Dsl,
    Constants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputInfo {
    pub name: String,
    pub kind: InputKind,
    /// `sha256:<hex>` of the input text.
    pub digest: String,
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub bound: Option<usize>,
    pub depth: Option<usize>,
    pub sweep: Option<[usize; 2]>,
    pub side: Option<String>,
    pub arguments: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Results {
    Check(CheckResult),
    Analyze(AnalyzeResult),
    Compute(ComputeResult),
    Example(ExampleResult),
}

impl Results {
    pub fn command(&self) -> &'static str {
        match self {
            Results::Check(_) => "check",
            Results::Analyze(_) => "analyze",
            Results::Compute(_) => "compute",
            Results::Example(_) => "example",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostic {
    /// `coassociativity`, `counit-left`, `counit-right`,
    /// `comodule-coassociativity` or `comodule-counit`.
    pub law: String,
    pub basis: String,
    pub entry: Vec<String>,
    pub lhs: Exact,
    pub rhs: Exact,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub passed: bool,
    pub dim: usize,
    pub basis: Vec<String>,
    pub diagnostic: Option<Diagnostic>,
    pub dual_associative: Option<bool>,
    pub dual_unital: Option<bool>,
    pub comodule_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Filtration {
    pub dims: Vec<usize>,
    pub stabilized_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeResult {
    pub dim: usize,
    pub basis: Vec<String>,
    pub grouplikes: Vec<String>,
    pub pointed: bool,
    pub filtration: Filtration,
    pub degrees: Option<DegreeTables>,
    pub verdicts: Vec<VerdictEntry>,
    pub sweeps: Vec<SweepTable>,
    pub notes: Vec<String>,
}

impl AnalyzeResult {
    pub fn verdict(&self, criterion: &str) -> Option<&VerdictEntry> {
        self.verdicts.iter().find(|e| e.criterion == criterion)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeResult {
    pub operation: String,
    pub dim: Option<usize>,
    /// Basis of the resulting subspace, as exact linear combinations.
    pub basis: Vec<String>,
    pub value: Option<Exact>,
    pub relations: BTreeMap<String, bool>,
    pub filtration: Option<Filtration>,
    pub multiplicities: Option<BTreeMap<String, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleResult {
    pub name: String,
    pub description: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectOutcome {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mismatch {
    pub criterion: String,
    pub expected: String,
    pub found: String,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<ReportDocument, serde_json::Error> {
        serde_json::from_str(text)
    }
}
