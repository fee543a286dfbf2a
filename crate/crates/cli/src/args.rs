use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcalg_core::comod::Side;
use qcalg_core::exactlin::Field;

#[derive(Debug, Parser)]
#[command(
    name = "qcalg",
    version,
    about = "Exact computations with coalgebras, comodules and quiver path coalgebras",
    after_help = "Inputs are built-in example names (see `qcalg example`) or paths to DSL or \
                  structure-constants files.\nSet QCALG_COLOR=0 or 1 to force colour off or on.\n\
                  Exit codes: 0 ok, 1 --expect mismatch, 2 input error, 3 internal error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse, compile and axiom-check an input.
    Check(CheckArgs),
    /// Coradical filtration, degree tables and the verdict battery.
    Analyze(AnalyzeArgs),
    /// One exact computation on a compiled truncation.
    Compute(ComputeArgs),
    /// List the built-in examples or print one.
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Built-in example name or file path.
    pub input: String,
    /// Family bound (overrides the first declared parameter).
    #[arg(long = "N", value_name = "k")]
    pub bound: Option<usize>,
    /// Maximal path length.
    #[arg(long, value_name = "d")]
    pub depth: Option<usize>,
    /// Ground field: `rational` or `gf:p`.
    #[arg(long, value_name = "rational|gf:p")]
    pub field: Option<Field>,
    /// Print the versioned JSON report instead of text.
    #[arg(long)]
    pub json: bool,
    /// Axiom-check the compiled coalgebra before running the command.
    #[arg(long)]
    pub check: bool,
    /// Raise an internal error after loading (exercises the bug-report path).
    #[arg(long, hide = true)]
    pub internal_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: Common,
    /// File of expected outcomes; only the key `axioms` applies here.
    #[arg(long, value_name = "verdict-file")]
    pub expect: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Family bounds for the F-Noetherian sweep, as `a..b`.
    #[arg(long, value_name = "a..b", value_parser = parse_sweep)]
    pub sweep: Option<(usize, usize)>,
    /// Vertex whose span is quotiented out in the sweep.
    #[arg(long = "quotient-by", value_name = "vertex")]
    pub quotient_by: Option<String>,
    /// File of expected verdicts, one `criterion verdict` pair per line.
    #[arg(long, value_name = "verdict-file")]
    pub expect: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operation {
    Wedge,
    Filtration,
    Socle,
    Mult,
    Skew,
    Hom,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub common: Common,
    pub operation: Operation,
    /// First subspace, e.g. `a,b1`, `C1`, `V2` or `all`.
    #[arg(long, value_name = "subspace")]
    pub x: Option<String>,
    /// Second subspace.
    #[arg(long, value_name = "subspace")]
    pub y: Option<String>,
    /// Subcomodule of C to quotient by.
    #[arg(long = "quotient-by", value_name = "subspace")]
    pub quotient_by: Option<String>,
    /// Grouplike labelling a simple comodule.
    #[arg(long, value_name = "grouplike")]
    pub s: Option<String>,
    #[arg(long, value_name = "grouplike")]
    pub g: Option<String>,
    #[arg(long, value_name = "grouplike")]
    pub h: Option<String>,
    /// Comodule side.
    #[arg(long, default_value = "right", value_parser = parse_side)]
    pub side: Side,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    pub name: Option<String>,
    #[arg(long)]
    pub json: bool,
}

pub fn parse_sweep(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| format!("`{text}` is not a range of the form a..b"))?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("`{s}` is not a non-negative integer"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a == 0 {
        return Err("sweep bounds start at 1".into());
    }
    if a > b {
        return Err(format!("empty sweep {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_side(text: &str) -> Result<Side, String> {
    text.parse::<Side>().map_err(|e| e.to_string())
}

impl Command {
    pub fn wants_json(&self) -> bool {
        match self {
            Command::Check(a) => a.common.json,
            Command::Analyze(a) => a.common.json,
            Command::Compute(a) => a.common.json,
            Command::Example(a) => a.json,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_syntax() {
        assert_eq!(parse_sweep("1..5"), Ok((1, 5)));
        assert_eq!(parse_sweep("2..=4"), Ok((2, 4)));
        assert!(parse_sweep("0..3").is_err());
        assert!(parse_sweep("5..1").is_err());
        assert!(parse_sweep("3").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn compute_positionals_and_flags() {
        let cli = Cli::try_parse_from(["qcalg", "compute", "ex1", "wedge", "--x", "V1", "--y", "V1", "--N", "1"]).unwrap();
        match cli.command {
            Command::Compute(c) => {
                assert_eq!(c.operation, Operation::Wedge);
                assert_eq!(c.common.bound, Some(1));
                assert_eq!(c.side, Side::Right);
            }
            other => panic!("parsed as {other:?}"),
        }
        let cli = Cli::try_parse_from(["qcalg", "analyze", "ex2", "--field", "gf:7", "--sweep", "1..3"]).unwrap();
        match cli.command {
            Command::Analyze(a) => {
                assert_eq!(a.common.field, Some(Field::Prime(7)));
                assert_eq!(a.sweep, Some((1, 3)));
            }
            other => panic!("parsed as {other:?}"),
        }
    }
}
