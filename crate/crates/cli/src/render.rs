//! Human-readable rendering of reports.

use std::fmt::Write as _;

use qcalg_core::quiverlab::{Verdict, VerdictEntry, Witness};

use crate::report::{AnalyzeResult, CheckResult, ComputeResult, ExampleResult, ReportDocument, Results};

#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    /// `QCALG_COLOR=1` forces colour, `0` disables it; otherwise colour is
    /// used only when stdout is a terminal.
    pub fn from_env() -> Style {
        use std::io::IsTerminal;
        let color = match std::env::var("QCALG_COLOR").ok().as_deref() {
            Some("1") => true,
            Some("0") => false,
            _ => std::io::stdout().is_terminal(),
        };
        Style { color }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn verdict(&self, v: Verdict) -> String {
        let code = match v {
            Verdict::Holds => "32",
            Verdict::Fails => "31",
            Verdict::Undecided => "33",
        };
        self.paint(code, &format!("{v:<9}"))
    }

    fn status(&self, ok: bool) -> String {
        if ok {
            self.paint("32", "pass")
        } else {
            self.paint("31", "FAIL")
        }
    }
}

pub fn render(doc: &ReportDocument, style: Style) -> String {
    let mut out = String::new();
    let p = &doc.parameters;
    let mut header = format!("{} {} [{}", doc.results.command(), doc.input.name, doc.input.field);
    if let Some(n) = p.bound {
        let _ = write!(header, ", N={n}");
    }
    if let Some(d) = p.depth {
        let _ = write!(header, ", depth={d}");
    }
    if let Some(side) = &p.side {
        let _ = write!(header, ", {side}");
    }
    header.push(']');
    let _ = writeln!(out, "{}", style.paint("1", &header));
    match &doc.results {
        Results::Check(r) => check(&mut out, r, style),
        Results::Analyze(r) => analyze(&mut out, r, style),
        Results::Compute(r) => compute(&mut out, r, p.arguments.iter()),
        Results::Example(r) => example(&mut out, r),
    }
    if let Some(e) = &doc.expectations {
        let _ = writeln!(out, "expectations: {} checked, {} mismatched", e.checked, e.mismatches.len());
        for m in &e.mismatches {
            let _ = writeln!(out, "  {}: expected {}, found {}", m.criterion, m.expected, m.found);
        }
    }
    out
}

fn check(out: &mut String, r: &CheckResult, style: Style) {
    let _ = writeln!(out, "dim {}: {}", r.dim, r.basis.join(", "));
    let _ = writeln!(out, "axioms: {}", style.status(r.passed));
    if let Some(d) = &r.diagnostic {
        let _ = writeln!(out, "  {}", d.message);
    }
    if let (Some(a), Some(u)) = (r.dual_associative, r.dual_unital) {
        let _ = writeln!(out, "dual algebra associative: {}, unital: {}", style.status(a), style.status(u));
    }
    if let Some(dim) = r.comodule_dim {
        let _ = writeln!(out, "comodule of dim {dim} included");
    }
}

fn witness(w: &Witness) -> String {
    match w {
        Witness::VertexPair { source, target, samples } => {
            let counts: Vec<String> = samples.iter().map(|s| s.count.to_string()).collect();
            format!("arrows {source} -> {target} grow: {}", counts.join(", "))
        }
        Witness::PathFamily { vertex, direction, samples, paths } => {
            let counts: Vec<String> = samples.iter().map(|s| s.count.to_string()).collect();
            let mut shown: Vec<&str> = paths.iter().take(6).map(String::as_str).collect();
            if paths.len() > shown.len() {
                shown.push("...");
            }
            format!("paths {direction} {vertex} grow: {} ({})", counts.join(", "), shown.join(", "))
        }
        Witness::Cycle { vertex, direction, through } => {
            format!("cycle through {through} yields infinitely many paths {direction} {vertex}")
        }
        Witness::GrowthTable { quotient_by, side, rows } => {
            let values: Vec<&str> = rows.iter().map(|r| r.ratio.as_str()).collect();
            format!("{side} multiplicity ratios for C/span{{{quotient_by}}} increase: {}", values.join(", "))
        }
    }
}

fn entry(out: &mut String, e: &VerdictEntry, style: Style) {
    let _ = writeln!(out, "  {:<18} {}", e.criterion, style.verdict(e.verdict));
    for r in &e.rule_chain {
        let _ = writeln!(out, "      rule: {r}");
    }
    if let Some(w) = &e.witness {
        let _ = writeln!(out, "      witness: {}", witness(w));
    }
    for n in &e.notes {
        let _ = writeln!(out, "      note: {n}");
    }
    for a in &e.assumptions {
        let _ = writeln!(out, "      assumption: {a}");
    }
}

fn analyze(out: &mut String, r: &AnalyzeResult, style: Style) {
    let dims: Vec<String> = r.filtration.dims.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "dim {}; grouplikes: {}", r.dim, r.grouplikes.join(", "));
    let stable = r.filtration.stabilized_at.map_or("not within the truncation".to_string(), |k| format!("at index {k}"));
    let _ = writeln!(out, "coradical filtration dims ({}), stabilized {stable}", dims.join(", "));
    if !r.verdicts.is_empty() {
        let _ = writeln!(out, "verdicts:");
        for e in &r.verdicts {
            entry(out, e, style);
        }
    }
    for s in &r.sweeps {
        let _ = writeln!(out, "sweep ({} comodules, C/span{{{}}}):", s.side, s.quotient_by);
        let _ = writeln!(out, "  {:>3}  {:<8} {:>7} {:>6} {:>7}", "N", "simple", "[C/X;S]", "[C;S]", "ratio");
        for row in &s.rows {
            let simple = row.simple.as_deref().unwrap_or("-");
            let _ = writeln!(
                out,
                "  {:>3}  {:<8} {:>7} {:>6} {:>7}",
                row.bound, simple, row.quotient_multiplicity, row.base_multiplicity, row.ratio
            );
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn compute<'a>(out: &mut String, r: &ComputeResult, arguments: impl Iterator<Item = (&'a String, &'a String)>) {
    let args: Vec<String> = arguments.map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "{}({})", r.operation, args.join(", "));
    if let Some(v) = &r.value {
        let _ = writeln!(out, "value {v}");
    }
    if let Some(d) = r.dim {
        let _ = writeln!(out, "dim {d}");
    }
    for b in &r.basis {
        let _ = writeln!(out, "  {b}");
    }
    for (k, v) in &r.relations {
        let _ = writeln!(out, "{k}: {}", if *v { "yes" } else { "no" });
    }
    if let Some(f) = &r.filtration {
        let dims: Vec<String> = f.dims.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "filtration dims ({})", dims.join(", "));
    }
    if let Some(m) = &r.multiplicities {
        for (s, k) in m {
            let _ = writeln!(out, "  [{s}] x {k}");
        }
    }
}

fn example(out: &mut String, r: &ExampleResult) {
    let _ = writeln!(out, "{}", r.description);
    out.push_str(&r.text);
}
