//! The report envelope shared by every subcommand.

use std::fmt::Write as _;

use factorum_core::{Certification, ExplorationBudget};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "factorum/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub schema: &'static str,
    pub invariant: String,
    pub value: Value,
    pub certification: Certification,
    pub budget: Value,
    pub witnesses: Vec<Value>,
    pub warnings: Vec<String>,
}

impl InvariantReport {
    pub fn new(invariant: impl Into<String>, value: impl Serialize, certification: Certification) -> Self {
        InvariantReport {
            schema: SCHEMA,
            invariant: invariant.into(),
            value: to_value(value),
            certification,
            budget: Value::Null,
            witnesses: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn exact_if(invariant: impl Into<String>, value: impl Serialize, exact: bool) -> Self {
        let c = if exact {
            Certification::Exact
        } else {
            Certification::LowerBound
        };
        Self::new(invariant, value, c)
    }

    pub fn budget(mut self, b: &ExplorationBudget) -> Self {
        self.budget = to_value(b);
        self
    }

    pub fn budget_value(mut self, v: impl Serialize) -> Self {
        self.budget = to_value(v);
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witnesses.push(to_value(w));
        self
    }

    pub fn warnings(mut self, w: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(w);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.certification == Certification::Exact
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Renders a JSON value on one line, without quotes around plain strings.
pub fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = xs.iter().map(inline).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn render(reports: &[InvariantReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(s, "{:<14} {}", "invariant", r.invariant);
                let _ = writeln!(s, "{:<14} {}", "value", inline(&r.value));
                let _ = writeln!(s, "{:<14} {}", "certification", r.certification.as_str());
                if !r.budget.is_null() {
                    let _ = writeln!(s, "{:<14} {}", "budget", r.budget);
                }
                for w in &r.witnesses {
                    let _ = writeln!(s, "{:<14} {}", "witness", w);
                }
                for w in &r.warnings {
                    let _ = writeln!(s, "{:<14} {}", "warning", w);
                }
                s.push('\n');
            }
            s
        }
    }
}
