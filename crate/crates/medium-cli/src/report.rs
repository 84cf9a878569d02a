//! Report rendering and the exit-code contract.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

/// 0 success, 2 precondition violation, 3 structural ambiguity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    Precondition,
    Ambiguity,
    /// Built-in self-test found a broken invariant.
    SelfTest,
}

impl Failure {
    pub fn exit_code(self) -> i32 {
        match self {
            Failure::Precondition => 2,
            Failure::Ambiguity => 3,
            Failure::SelfTest => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub failure: Failure,
    pub message: String,
    pub diagnostics: Option<Value>,
}

impl CliError {
    pub fn precondition(message: impl ToString) -> Self {
        CliError { failure: Failure::Precondition, message: message.to_string(), diagnostics: None }
    }

    pub fn ambiguity(message: impl ToString) -> Self {
        CliError { failure: Failure::Ambiguity, message: message.to_string(), diagnostics: None }
    }

    pub fn with_diagnostics(mut self, d: Value) -> Self {
        self.diagnostics = Some(d);
        self
    }
}

impl From<crate::document::DocumentError> for CliError {
    fn from(e: crate::document::DocumentError) -> Self {
        CliError::precondition(e)
    }
}

impl From<medium_classify::ClassifyError> for CliError {
    fn from(e: medium_classify::ClassifyError) -> Self {
        if e.is_ambiguity() {
            CliError::ambiguity(e)
        } else {
            CliError::precondition(e)
        }
    }
}

impl From<medium_exterior::ExteriorError> for CliError {
    fn from(e: medium_exterior::ExteriorError) -> Self {
        use medium_exterior::ExteriorError::*;
        match e {
            BranchAmbiguity { .. } | Degenerate { .. } | Reconstruction { .. } => CliError::ambiguity(e),
            _ => CliError::precondition(e),
        }
    }
}

/// A finished command: the JSON document and its text rendering.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub failure: Option<Failure>,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report { json, text, failure: None }
    }

    pub fn error(command: &str, e: &CliError) -> Self {
        let mut body = json!({
            "kind": e.failure,
            "message": e.message,
            "exit_code": e.failure.exit_code(),
        });
        if let Some(d) = &e.diagnostics {
            body["diagnostics"] = d.clone();
        }
        let mut text = format!("error ({:?}): {}\n", e.failure, e.message);
        if let Some(d) = &e.diagnostics {
            text.push_str(&render_fields(d, 1));
        }
        Report { json: json!({ "command": command, "error": body }), text, failure: Some(e.failure) }
    }

    pub fn exit_code(&self) -> i32 {
        self.failure.map_or(0, Failure::exit_code)
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() && x != 0.0 && !(1e-3..1e6).contains(&x.abs()) => format!("{x:.3e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// `key  value` lines for a flat object; nested objects indent.
pub fn render_fields(v: &Value, depth: usize) -> String {
    let mut out = String::new();
    let pad = "  ".repeat(depth);
    if let Value::Object(map) = v {
        for (k, x) in map {
            match x {
                Value::Object(_) => {
                    let _ = writeln!(out, "{pad}{k}:");
                    out.push_str(&render_fields(x, depth + 1));
                }
                Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
                    let cells: Vec<String> = items.iter().map(scalar).collect();
                    let _ = writeln!(out, "{pad}{k:<14} [{}]", cells.join(", "));
                }
                Value::Array(_) => {}
                _ => {
                    let _ = writeln!(out, "{pad}{k:<14} {}", scalar(x));
                }
            }
        }
    }
    out
}

/// Rows of a float matrix, aligned.
pub fn render_matrix(name: &str, m: &medium_exact::Mat<f64>) -> String {
    let mut out = format!("{name}:\n");
    for i in 0..m.nrows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{:>12.6}", x + 0.0)).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
    out
}
