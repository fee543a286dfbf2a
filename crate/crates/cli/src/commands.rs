use std::collections::BTreeMap;

use qcalg_core::coalg::{AxiomFailure, CounitSide, FiltrationChain};
use qcalg_core::comod::{hom_image_sum, hom_space, Comodule, ComoduleFailure};
use qcalg_core::exactlin::Subspace;
use qcalg_core::quiverlab::{degree_tables, torsion_rat_verdict, AnalysisOptions};

use crate::args::{AnalyzeArgs, CheckArgs, Command, Common, ComputeArgs, ExampleArgs, Operation};
use crate::error::{CliError, EXIT_EXPECT_MISMATCH, EXIT_INPUT, EXIT_OK};
use crate::exact::Exact;
use crate::expect;
use crate::input::{self, LoadOptions, Model};
use crate::report::{
    AnalyzeResult, CheckResult, ComputeResult, Diagnostic, ExampleResult, Filtration, InputInfo, InputKind,
    Parameters, ReportDocument, Results, Tool, SCHEMA_VERSION,
};
use crate::subspaces;

/// A finished command: the report and the exit status it calls for.
pub struct CommandOutput {
    pub report: Option<ReportDocument>,
    /// Plain text for commands without a report (`example` listings).
    pub text: Option<String>,
    pub code: i32,
}

pub fn run(command: &Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Check(a) => check(a),
        Command::Analyze(a) => analyze(a),
        Command::Compute(a) => compute(a),
        Command::Example(a) => example(a),
    }
}

fn load(common: &Common) -> Result<Model, CliError> {
    let source = input::resolve(&common.input)?;
    let model = Model::load(&source, &LoadOptions { field: common.field, bound: common.bound, depth: common.depth })?;
    if common.internal_fault {
        return Err(CliError::Internal(format!("fault injected after loading `{}`", common.input)));
    }
    if common.check {
        if let Some(failure) = model.coalgebra.check_axioms().failure {
            return Err(CliError::Axioms(failure.describe(&model.coalgebra)));
        }
    }
    Ok(model)
}

fn parameters(model: &Model, common: &Common) -> Parameters {
    Parameters {
        bound: model.bound(),
        depth: common.depth,
        sweep: None,
        side: None,
        arguments: BTreeMap::new(),
    }
}

fn document(info: InputInfo, parameters: Parameters, results: Results) -> ReportDocument {
    ReportDocument {
        schema: SCHEMA_VERSION.to_string(),
        tool: Tool::current(),
        input: info,
        parameters,
        results,
        expectations: None,
    }
}

fn filtration(chain: &FiltrationChain) -> Filtration {
    Filtration { dims: chain.dims(), stabilized_at: chain.stabilized_at }
}

fn coalgebra_diagnostic(model: &Model, failure: &AxiomFailure) -> Diagnostic {
    let c = &model.coalgebra;
    let message = failure.describe(c);
    match failure {
        AxiomFailure::Coassociativity { basis, entry, left, right } => Diagnostic {
            law: "coassociativity".into(),
            basis: c.label(*basis).to_string(),
            entry: entry.iter().map(|&i| c.label(i).to_string()).collect(),
            lhs: left.into(),
            rhs: right.into(),
            message,
        },
        AxiomFailure::Counit { side, basis, entry, found, expected } => Diagnostic {
            law: match side {
                CounitSide::Left => "counit-left".into(),
                CounitSide::Right => "counit-right".into(),
            },
            basis: c.label(*basis).to_string(),
            entry: vec![c.label(*entry).to_string()],
            lhs: found.into(),
            rhs: expected.into(),
            message,
        },
    }
}

fn comodule_diagnostic(m: &Comodule, failure: &ComoduleFailure) -> Diagnostic {
    let c = m.oriented_base();
    let ml = |i: usize| m.labels()[i].clone();
    match failure {
        ComoduleFailure::Coassociativity { basis, entry: [j, a, b], left, right } => Diagnostic {
            law: "comodule-coassociativity".into(),
            basis: ml(*basis),
            entry: vec![ml(*j), c.label(*a).to_string(), c.label(*b).to_string()],
            lhs: left.into(),
            rhs: right.into(),
            message: format!(
                "coaction is not coassociative at {}: coefficient of {}⊗{}⊗{} is {left} in (ρ⊗id)ρ but {right} in (id⊗Δ)ρ",
                ml(*basis),
                ml(*j),
                c.label(*a),
                c.label(*b)
            ),
        },
        ComoduleFailure::Counit { basis, entry, found } => {
            let expected = if basis == entry { m.field().one() } else { m.field().zero() };
            Diagnostic {
                law: "comodule-counit".into(),
                basis: ml(*basis),
                entry: vec![ml(*entry)],
                lhs: found.into(),
                rhs: (&expected).into(),
                message: format!(
                    "counit law fails at {}: coefficient of {} is {found} (expected {expected})",
                    ml(*basis),
                    ml(*entry)
                ),
            }
        }
    }
}

fn apply_expectations(
    report: &mut ReportDocument,
    path: Option<&std::path::Path>,
    actual: BTreeMap<String, String>,
    default_code: i32,
) -> Result<i32, CliError> {
    let Some(path) = path else { return Ok(default_code) };
    let expected = expect::load(path)?;
    let outcome = expect::compare(&expected, &actual)?;
    let code = if outcome.mismatches.is_empty() { EXIT_OK } else { EXIT_EXPECT_MISMATCH };
    report.expectations = Some(outcome);
    Ok(code)
}

fn check(args: &CheckArgs) -> Result<CommandOutput, CliError> {
    let model = load(&args.common)?;
    let c = &model.coalgebra;
    let mut diagnostic = c.check_axioms().failure.map(|f| coalgebra_diagnostic(&model, &f));
    let (mut dual_associative, mut dual_unital) = (None, None);
    if diagnostic.is_none() {
        let dual = c.dual_algebra()?;
        dual_associative = Some(dual.associativity_defect().is_none());
        dual_unital = Some(dual.unit_law_holds());
        if dual_associative == Some(false) || dual_unital == Some(false) {
            return Err(CliError::Internal("coalgebra axioms hold but the dual algebra is not unital associative".into()));
        }
        if let Some(m) = &model.comodule {
            diagnostic = m.check().failure.map(|f| comodule_diagnostic(m, &f));
        }
    }
    let passed = diagnostic.is_none();
    let result = CheckResult {
        passed,
        dim: c.dim(),
        basis: c.labels().to_vec(),
        diagnostic,
        dual_associative,
        dual_unital,
        comodule_dim: model.comodule.as_ref().map(Comodule::dim),
    };
    let mut report = document(model.info.clone(), parameters(&model, &args.common), Results::Check(result));
    let verdict = if passed { "holds" } else { "fails" };
    let actual = BTreeMap::from([("axioms".to_string(), verdict.to_string())]);
    let default_code = if passed { EXIT_OK } else { EXIT_INPUT };
    let code = apply_expectations(&mut report, args.expect.as_deref(), actual, default_code)?;
    Ok(CommandOutput { report: Some(report), text: None, code })
}

fn analyze(args: &AnalyzeArgs) -> Result<CommandOutput, CliError> {
    let model = load(&args.common)?;
    let c = &model.coalgebra;
    let chain = c.coradical_filtration()?;
    let mut params = parameters(&model, &args.common);
    let mut result = AnalyzeResult {
        dim: c.dim(),
        basis: c.labels().to_vec(),
        grouplikes: c.grouplikes().into_iter().map(|g| c.label(g).to_string()).collect(),
        pointed: c.is_pointed()?,
        filtration: filtration(&chain),
        degrees: None,
        verdicts: Vec::new(),
        sweeps: Vec::new(),
        notes: Vec::new(),
    };
    match &model.spec {
        Some(spec) => {
            let opts = AnalysisOptions {
                bound: args.common.bound,
                depth: args.common.depth,
                sweep: args.sweep.map(|(a, b)| a..=b),
                quotient_vertex: args.quotient_by.clone(),
            };
            result.degrees = Some(degree_tables(spec, model.bound())?);
            let report = torsion_rat_verdict(spec, &opts)?;
            if let Some(rows) = report.sweeps.first().map(|s| &s.rows) {
                if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
                    params.sweep = Some([first.bound, last.bound]);
                }
                params.arguments.insert("quotient_by".into(), report.sweeps[0].quotient_by.clone());
            }
            result.verdicts = report.entries;
            result.sweeps = report.sweeps;
        }
        None => {
            if args.sweep.is_some() || args.quotient_by.is_some() {
                return Err(CliError::Argument("--sweep and --quotient-by need a quiver input".into()));
            }
            result.notes.push("verdicts need a quiver presentation; only coalgebra data is reported".into());
        }
    }
    let actual = result.verdicts.iter().map(|e| (e.criterion.clone(), e.verdict.to_string())).collect();
    let mut report = document(model.info.clone(), params, Results::Analyze(result));
    let code = apply_expectations(&mut report, args.expect.as_deref(), actual, EXIT_OK)?;
    Ok(CommandOutput { report: Some(report), text: None, code })
}

fn required<'a>(value: &'a Option<String>, flag: &str, op: &str) -> Result<&'a str, CliError> {
    value.as_deref().ok_or_else(|| CliError::Argument(format!("`compute {op}` needs --{flag}")))
}

fn grouplike(model: &Model, label: &str) -> Result<usize, CliError> {
    let i = model.coalgebra.index_of(label)?;
    if !model.coalgebra.is_grouplike(i) {
        return Err(CliError::Argument(format!("`{label}` is not grouplike")));
    }
    Ok(i)
}

/// `C` on the requested side, or `C/X` when `--quotient-by` is given, or the
/// comodule carried by a structure-constants input.
fn target_comodule(model: &Model, args: &ComputeArgs, arguments: &mut BTreeMap<String, String>) -> Result<Comodule, CliError> {
    let regular = Comodule::regular(model.coalgebra.clone(), args.side);
    match (&args.quotient_by, &model.comodule) {
        (Some(expr), _) => {
            arguments.insert("quotient_by".into(), expr.clone());
            let x = subspaces::resolve(model, expr)?;
            if !regular.is_subcomodule(&x)? {
                return Err(CliError::Argument(format!("`{expr}` is not a {} subcomodule of C", args.side)));
            }
            Ok(regular.quotient(&x)?)
        }
        (None, Some(m)) if m.side() == args.side => Ok(m.clone()),
        (None, _) => Ok(regular),
    }
}

fn describe_space(c: &qcalg_core::coalg::Coalgebra, x: &Subspace) -> Vec<String> {
    x.basis().iter().map(|v| c.format_vector(v)).collect()
}

fn compute(args: &ComputeArgs) -> Result<CommandOutput, CliError> {
    let model = load(&args.common)?;
    let c = &model.coalgebra;
    let op = format!("{:?}", args.operation).to_lowercase();
    let mut params = parameters(&model, &args.common);
    let mut arguments = BTreeMap::new();
    let mut result = ComputeResult {
        operation: op.clone(),
        dim: None,
        basis: Vec::new(),
        value: None,
        relations: BTreeMap::new(),
        filtration: None,
        multiplicities: None,
    };
    match args.operation {
        Operation::Wedge => {
            let (xs, ys) = (required(&args.x, "x", &op)?, required(&args.y, "y", &op)?);
            arguments.insert("x".into(), xs.to_string());
            arguments.insert("y".into(), ys.to_string());
            let (x, y) = (subspaces::resolve(&model, xs)?, subspaces::resolve(&model, ys)?);
            let w = c.wedge(&x, &y)?;
            result.dim = Some(w.dim());
            result.basis = describe_space(c, &w);
            result.relations.insert("equals_x".into(), w == x);
            result.relations.insert("equals_y".into(), w == y);
            result.relations.insert("contains_x".into(), w.contains(&x)?);
            result.relations.insert("contains_y".into(), w.contains(&y)?);
            result.relations.insert("is_subcoalgebra".into(), c.is_subcoalgebra(&w)?);
        }
        Operation::Filtration => {
            let chain = c.coradical_filtration()?;
            result.dim = Some(c.dim());
            result.filtration = Some(filtration(&chain));
        }
        Operation::Socle => {
            params.side = Some(args.side.to_string());
            let m = target_comodule(&model, args, &mut arguments)?;
            let socle = m.socle()?;
            result.dim = Some(socle.dim());
            result.basis = socle.basis().iter().map(|v| m.format_vector(v)).collect();
            result.multiplicities = Some(m.multiplicity_table()?.entries);
            result.value = Some(Exact::from(m.dim()));
        }
        Operation::Mult => {
            params.side = Some(args.side.to_string());
            let s = required(&args.s, "s", &op)?;
            arguments.insert("s".into(), s.to_string());
            grouplike(&model, s)?;
            let m = target_comodule(&model, args, &mut arguments)?;
            result.value = Some(Exact::from(m.multiplicity(s)?));
            result.dim = Some(m.dim());
        }
        Operation::Hom => {
            params.side = Some(args.side.to_string());
            let s = required(&args.s, "s", &op)?;
            arguments.insert("s".into(), s.to_string());
            grouplike(&model, s)?;
            let m = target_comodule(&model, args, &mut arguments)?;
            let simple = Comodule::simple(c.clone(), args.side, s)?;
            let hom = hom_space(&simple, &m)?;
            let images = hom_image_sum(&simple, &m)?;
            result.dim = Some(hom.dim());
            result.value = Some(Exact::from(hom.dim()));
            result.basis = images.basis().iter().map(|v| m.format_vector(v)).collect();
        }
        Operation::Skew => {
            let (gs, hs) = (required(&args.g, "g", &op)?, required(&args.h, "h", &op)?);
            arguments.insert("g".into(), gs.to_string());
            arguments.insert("h".into(), hs.to_string());
            let (g, h) = (grouplike(&model, gs)?, grouplike(&model, hs)?);
            let p = c.skew_primitives(g, h)?;
            result.dim = Some(p.dim());
            result.basis = describe_space(c, &p);
        }
    }
    params.arguments = arguments;
    let report = document(model.info.clone(), params, Results::Compute(result));
    Ok(CommandOutput { report: Some(report), text: None, code: EXIT_OK })
}

fn example(args: &ExampleArgs) -> Result<CommandOutput, CliError> {
    let Some(name) = &args.name else {
        let mut text = String::new();
        for e in &input::EXAMPLES {
            text.push_str(&format!("{:<16} {}\n", e.name, e.description));
        }
        return Ok(CommandOutput { report: None, text: Some(text), code: EXIT_OK });
    };
    let e = input::example(name).ok_or_else(|| CliError::UnknownInput(name.clone()))?;
    if !args.json {
        return Ok(CommandOutput { report: None, text: Some(e.text.to_string()), code: EXIT_OK });
    }
    let kind = if qcalg_core::constants::looks_like_constants(e.text) { InputKind::Constants } else { InputKind::Dsl };
    let info = InputInfo { name: e.name.into(), kind, digest: input::digest(e.text), field: "rational".into() };
    let params = Parameters { bound: None, depth: None, sweep: None, side: None, arguments: BTreeMap::new() };
    let result = ExampleResult { name: e.name.into(), description: e.description.into(), text: e.text.into() };
    Ok(CommandOutput { report: Some(document(info, params, Results::Example(result))), text: None, code: EXIT_OK })
}
