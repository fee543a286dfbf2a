//! The `qcalg` command-line front end, usable in-process through [`execute`].

pub mod args;
mod commands;
pub mod error;
pub mod exact;
pub mod expect;
pub mod input;
pub mod render;
pub mod report;
mod subspaces;

use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::Parser;
use serde::{Deserialize, Serialize};

use args::Cli;
use error::{CliError, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};
use render::Style;
use report::Tool;

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const BUG_SCHEMA: &str = "qcalg.bug.v1";

/// Written for exit code 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BugReport {
    pub schema: String,
    pub tool: Tool,
    pub arguments: Vec<String>,
    pub message: String,
}

pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text },
            };
        }
    };
    let json = cli.command.wants_json();
    let arguments: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = catch_unwind(AssertUnwindSafe(|| commands::run(&cli.command)));
    let error = match result {
        Ok(Ok(out)) => {
            let stdout = match (&out.report, out.text) {
                (Some(report), _) if json => report.to_json(),
                (Some(report), _) => render::render(report, Style::from_env()),
                (None, Some(text)) => text,
                (None, None) => String::new(),
            };
            let mut stderr = String::new();
            if let Some(e) = out.report.as_ref().and_then(|r| r.expectations.as_ref()) {
                for m in &e.mismatches {
                    stderr.push_str(&format!("expectation failed: {} expected {}, found {}\n", m.criterion, m.expected, m.found));
                }
            }
            return Outcome { code: out.code, stdout, stderr };
        }
        Ok(Err(e)) => e,
        Err(payload) => {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic with a non-string payload".into());
            CliError::Internal(format!("panic: {message}"))
        }
    };
    let stdout = if json {
        serde_json::to_string_pretty(&error.to_document()).expect("error documents serialize") + "\n"
    } else {
        String::new()
    };
    let mut stderr = format!("error: {error}\n");
    if error.exit_code() == EXIT_INTERNAL {
        stderr.push_str(&bug_dump(&arguments, &error));
    }
    Outcome { code: error.exit_code(), stdout, stderr }
}

/// Writes a bug report to `$QCALG_BUG_DIR` (or the temp directory) and
/// returns the text to show on stderr.
fn bug_dump(arguments: &[String], error: &CliError) -> String {
    let bug = BugReport {
        schema: BUG_SCHEMA.into(),
        tool: Tool::current(),
        arguments: arguments.to_vec(),
        message: error.to_string(),
    };
    let text = serde_json::to_string_pretty(&bug).expect("bug reports serialize");
    let dir = std::env::var_os("QCALG_BUG_DIR").map(std::path::PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let path = dir.join(format!("qcalg-bug-{}-{stamp}.json", std::process::id()));
    let location = match std::fs::write(&path, &text) {
        Ok(()) => format!("bug report written to {}\n", path.display()),
        Err(e) => format!("could not write bug report to {}: {e}\n", path.display()),
    };
    format!("this is a bug in qcalg; please report it with the dump below\n{location}{text}\n")
}
