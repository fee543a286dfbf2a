//! Expectation files for `--expect`: one `criterion verdict` pair per line
//! (`:` or `=` may separate them, `#` starts a comment), or a flat JSON
//! object mapping criteria to verdicts.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;
use crate::report::{ExpectOutcome, Mismatch};

const VERDICTS: [&str; 3] = ["holds", "fails", "undecided"];

pub fn load(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse(&path.display().to_string(), &text)
}

pub fn parse(path: &str, text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let err = |line: usize, message: String| CliError::ExpectFormat { path: path.to_string(), line, message };
    let mut out = BTreeMap::new();
    if text.trim_start().starts_with('{') {
        let map: BTreeMap<String, String> = serde_json::from_str(text).map_err(|e| err(e.line(), e.to_string()))?;
        for (k, v) in map {
            if !VERDICTS.contains(&v.as_str()) {
                return Err(err(1, format!("`{v}` is not one of holds, fails, undecided")));
            }
            out.insert(k, v);
        }
        return Ok(out);
    }
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content
            .split(|c: char| c == ':' || c == '=' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let [criterion, verdict] = parts.as_slice() else {
            return Err(err(line, format!("expected `criterion verdict`, found `{content}`")));
        };
        if !VERDICTS.contains(verdict) {
            return Err(err(line, format!("`{verdict}` is not one of holds, fails, undecided")));
        }
        if out.insert(criterion.to_string(), verdict.to_string()).is_some() {
            return Err(err(line, format!("`{criterion}` is listed twice")));
        }
    }
    Ok(out)
}

/// Compares expectations with actual outcomes. Unknown criteria are errors.
pub fn compare(
    expected: &BTreeMap<String, String>,
    actual: &BTreeMap<String, String>,
) -> Result<ExpectOutcome, CliError> {
    let mut mismatches = Vec::new();
    for (criterion, want) in expected {
        let found = actual.get(criterion).ok_or_else(|| {
            let known: Vec<&str> = actual.keys().map(String::as_str).collect();
            CliError::Argument(format!("unknown criterion `{criterion}` in expectations (known: {})", known.join(", ")))
        })?;
        if found != want {
            mismatches.push(Mismatch { criterion: criterion.clone(), expected: want.clone(), found: found.clone() });
        }
    }
    Ok(ExpectOutcome { checked: expected.len(), mismatches })
}
