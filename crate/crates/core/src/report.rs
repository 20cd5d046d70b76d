//! Machine-readable JSON report shared by every subcommand.
//!
//! One schema covers all commands; fields a command does not produce are
//! omitted. [`validate`] is the schema check: unknown fields, `null` values,
//! a wrong version string or a missing command-specific field are rejected.

use serde::{Deserialize, Serialize};

use crate::factor::TieRule;
use crate::growth::{BoundTable, GrowthCertificate, ReferenceTarget};
use crate::lpcert::simplex::LpStatus;
use crate::lpcert::DeltaProgram;

pub const SCHEMA_VERSION: &str = "aasen-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Factor,
    Growth,
    Certify,
    Lp,
    Examples,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InvariantViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: Command,
    pub status: Status,
    pub inputs: Inputs,
    pub outputs: Outputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<TieRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warm: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LpOutputs {
    pub program: DeltaProgram,
    pub status: LpStatus,
    pub objective: f64,
    pub point: Vec<f64>,
    pub iterations: usize,
    pub tnn_upper_bound: f64,
    pub bound_not_tight: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleOutputs {
    pub expected_growth: f64,
    pub reference_residual: f64,
    pub reference_growth: f64,
    pub reference_all_pass: bool,
    pub recomputed_residual: f64,
    pub recomputed_growth: f64,
    pub recomputed_all_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchOutputs {
    pub best_growth: f64,
    pub bound: f64,
    pub gap: f64,
    pub evaluations: usize,
    pub best_restart: usize,
    pub per_restart_best: Vec<f64>,
    pub best_matrix: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_target: Option<ReferenceTarget>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    /// Strictly lower triangle of `L`, row by row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tridiagonal: Option<Tridiagonal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<GrowthCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpOutputs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<ExampleOutputs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchOutputs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_targets: Option<Vec<ReferenceTarget>>,
}

impl Report {
    pub fn new(command: Command, inputs: Inputs, outputs: Outputs) -> Self {
        Self {
            schema: SCHEMA_VERSION.to_string(),
            command,
            status: Status::Ok,
            inputs,
            outputs,
            message: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("null value at {0}")]
    Null(String),
    #[error("unsupported schema `{0}`")]
    Version(String),
    #[error("{command:?} report lacks `{field}`")]
    Missing {
        command: Command,
        field: &'static str,
    },
}

fn find_null(v: &serde_json::Value, path: &mut String) -> bool {
    use serde_json::Value;
    match v {
        Value::Null => true,
        Value::Array(items) => items.iter().enumerate().any(|(i, x)| {
            let len = path.len();
            path.push_str(&format!("[{i}]"));
            let hit = find_null(x, path);
            if !hit {
                path.truncate(len);
            }
            hit
        }),
        Value::Object(map) => map.iter().any(|(k, x)| {
            let len = path.len();
            path.push('.');
            path.push_str(k);
            let hit = find_null(x, path);
            if !hit {
                path.truncate(len);
            }
            hit
        }),
        _ => false,
    }
}

/// Parses and schema-checks a report.
pub fn validate(text: &str) -> Result<Report, SchemaError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let mut path = String::from("$");
    if find_null(&value, &mut path) {
        return Err(SchemaError::Null(path));
    }
    let report: Report = serde_json::from_value(value)?;
    if report.schema != SCHEMA_VERSION {
        return Err(SchemaError::Version(report.schema));
    }
    let o = &report.outputs;
    let required: &[(&'static str, bool)] = match report.command {
        Command::Factor => &[
            ("permutation", o.permutation.is_some()),
            ("lower", o.lower.is_some()),
            ("tridiagonal", o.tridiagonal.is_some()),
            ("residual", o.residual.is_some()),
        ],
        Command::Growth => &[
            ("growth", o.growth.is_some()),
            ("bounds", o.bounds.is_some()),
        ],
        Command::Certify => &[("certificate", o.certificate.is_some())],
        Command::Lp => &[("lp", o.lp.is_some())],
        Command::Examples => &[
            ("example", o.example.is_some()),
            ("growth", o.growth.is_some()),
        ],
        Command::Search => &[("search", o.search.is_some())],
    };
    for &(field, present) in required {
        if !present {
            return Err(SchemaError::Missing {
                command: report.command,
                field,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_report_round_trips() {
        let r = Report::new(
            Command::Certify,
            Inputs::default(),
            Outputs {
                certificate: Some(GrowthCertificate {
                    n: 1,
                    rho: 1.0,
                    all_pass: true,
                    checks: vec![],
                }),
                ..Default::default()
            },
        );
        let back = validate(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn rejects_bad_reports() {
        let ok = Report::new(Command::Lp, Inputs::default(), Outputs::default());
        assert!(matches!(
            validate(&ok.to_json()),
            Err(SchemaError::Missing { field: "lp", .. })
        ));
        let text = r#"{"schema":"aasen-report/0","command":"search","status":"ok","inputs":{},"outputs":{}}"#;
        assert!(matches!(validate(text), Err(SchemaError::Version(_))));
        let text = r#"{"schema":"aasen-report/1","command":"search","status":"ok","inputs":{},"outputs":{},"extra":1}"#;
        assert!(matches!(validate(text), Err(SchemaError::Json(_))));
        let text = r#"{"schema":"aasen-report/1","command":"growth","status":"ok","inputs":{},"outputs":{"growth":null}}"#;
        assert!(matches!(validate(text), Err(SchemaError::Null(p)) if p == "$.outputs.growth"));
    }
}
