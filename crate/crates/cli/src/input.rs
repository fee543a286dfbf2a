//! Resolving an input name to text and loading it as a model.

use std::collections::BTreeMap;
use std::sync::Arc;

use qcalg_core::coalg::Coalgebra;
use qcalg_core::comod::Comodule;
use qcalg_core::constants;
use qcalg_core::exactlin::Field;
use qcalg_core::quiverlab::{builtin, compile, parse_spec, QuiverSpec, Truncation};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::{InputInfo, InputKind};

/// ex1 at `N = 1` with `Δ(p1)` ending in `p1⊗b1` instead of `p1⊗a`.
pub const MUTANT_EX1: &str = "\
# ex1 at N = 1 with the misprinted last term p1⊗b1 in Δ(p1)
field rational
dim 5
label 0 a
label 1 b1
label 2 x1
label 3 y1
label 4 p1
delta 0: 0 0 1
delta 1: 1 1 1
delta 2: 0 2 1; 2 1 1
delta 3: 1 3 1; 3 0 1
delta 4: 0 4 1; 2 3 1; 4 1 1
epsilon: 1 1 0 0 0
";

pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const EXAMPLES: [Example; 6] = [
    Example { name: "ex1", description: "two-cycles a -> b[n] -> a with composite paths p[n]", text: builtin::EX1 },
    Example { name: "ex2", description: "n parallel arrows a -> b[n]", text: builtin::EX2 },
    Example { name: "single-vertex", description: "one vertex, no arrows", text: builtin::SINGLE_VERTEX },
    Example { name: "unbounded-pair", description: "N parallel arrows between one pair of vertices", text: builtin::UNBOUNDED_PAIR },
    Example { name: "mutant-ex1", description: "structure constants of ex1 at N = 1 with a wrong term in Δ(p1)", text: MUTANT_EX1 },
    Example { name: "empty-spec", description: "an empty DSL text", text: "" },
];

pub fn example(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

pub struct Source {
    pub name: String,
    pub text: String,
}

pub fn resolve(name: &str) -> Result<Source, CliError> {
    if let Some(e) = example(name) {
        return Ok(Source { name: name.to_string(), text: e.text.to_string() });
    }
    let path = std::path::Path::new(name);
    if !path.exists() {
        return Err(CliError::UnknownInput(name.to_string()));
    }
    std::fs::read_to_string(path)
        .map(|text| Source { name: name.to_string(), text })
        .map_err(|e| CliError::Io { path: name.to_string(), message: e.to_string() })
}

pub fn digest(text: &str) -> String {
    format!("sha256:{:x}", Sha256::digest(text.as_bytes()))
}

/// A loaded input: a compiled quiver truncation or a bare coalgebra.
pub struct Model {
    pub info: InputInfo,
    pub coalgebra: Arc<Coalgebra>,
    pub spec: Option<QuiverSpec>,
    pub truncation: Option<Truncation>,
    pub comodule: Option<Comodule>,
}

pub struct LoadOptions {
    pub field: Option<Field>,
    pub bound: Option<usize>,
    pub depth: Option<usize>,
}

impl Model {
    pub fn load(source: &Source, opts: &LoadOptions) -> Result<Model, CliError> {
        let kind = if constants::looks_like_constants(&source.text) { InputKind::Constants } else { InputKind::Dsl };
        let digest = digest(&source.text);
        match kind {
            InputKind::Constants => {
                let parsed = constants::parse(&source.text, opts.field)?;
                let coalgebra = Arc::new(parsed.coalgebra.clone());
                let comodule = parsed.comodule(coalgebra.clone())?;
                Ok(Model {
                    info: InputInfo { name: source.name.clone(), kind, digest, field: coalgebra.field().to_string() },
                    coalgebra,
                    spec: None,
                    truncation: None,
                    comodule,
                })
            }
            InputKind::Dsl => {
                let mut spec = parse_spec(&source.text, &BTreeMap::new())?;
                if let Some(f) = opts.field {
                    spec.field = f;
                }
                let truncation = compile(&spec, opts.bound, opts.depth)?;
                Ok(Model {
                    info: InputInfo { name: source.name.clone(), kind, digest, field: spec.field.to_string() },
                    coalgebra: truncation.coalgebra.clone(),
                    spec: Some(spec),
                    truncation: Some(truncation),
                    comodule: None,
                })
            }
        }
    }

    /// The family bound actually used: the flag, else the spec default.
    pub fn bound(&self) -> Option<usize> {
        self.truncation.as_ref().and_then(|t| t.bound).or_else(|| {
            self.spec.as_ref().and_then(|s| s.default_bound()).and_then(|v| usize::try_from(v).ok())
        })
    }
}
