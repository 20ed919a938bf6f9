//! Structured experiment output.
//!
//! Every experiment produces an [`ExperimentReport`]: parameters, a summary
//! object, named pass/fail checks, and per-sample records. The report can be
//! rendered as a single JSON document, as JSON Lines, or as CSV over the
//! sample records. JSON Lines and CSV contain no timing data, so two runs
//! with identical parameters and seed produce identical bytes.

use serde_json::{json, Map, Value};

/// Normal quantile for a two-sided 99% confidence level.
const Z_99: f64 = 2.5758293035489004;

/// Outcome of one named check inside an experiment or the verify suite.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Complete record of one experiment run.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub name: &'static str,
    pub params: Value,
    pub summary: Value,
    pub checks: Vec<CheckResult>,
    pub samples: Vec<Value>,
    pub wall_time_ms: u128,
}

impl ExperimentReport {
    pub fn new(name: &'static str, params: Value) -> Self {
        ExperimentReport {
            name,
            params,
            summary: Value::Object(Map::new()),
            checks: Vec::new(),
            samples: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult::new(name, passed, detail));
    }

    /// True when every named check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn checks_value(&self) -> Value {
        Value::Array(
            self.checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect(),
        )
    }

    /// Single JSON document, including wall time.
    pub fn to_json(&self) -> String {
        let doc = json!({
            "experiment": self.name,
            "params": self.params,
            "summary": self.summary,
            "checks": self.checks_value(),
            "samples": Value::Array(self.samples.clone()),
            "wall_time_ms": self.wall_time_ms,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }

    /// JSON Lines: a header record, one record per check, one per sample.
    /// Timing is deliberately omitted.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let header = json!({
            "record": "header",
            "experiment": self.name,
            "params": self.params,
            "summary": self.summary,
        });
        out.push_str(&serde_json::to_string(&header).expect("header serializes"));
        out.push('\n');
        for c in &self.checks {
            let line = json!({
                "record": "check",
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            });
            out.push_str(&serde_json::to_string(&line).expect("check serializes"));
            out.push('\n');
        }
        for s in &self.samples {
            let mut obj = Map::new();
            obj.insert("record".into(), Value::String("sample".into()));
            if let Value::Object(fields) = s {
                for (k, v) in fields {
                    obj.insert(k.clone(), v.clone());
                }
            }
            out.push_str(&serde_json::to_string(&Value::Object(obj)).expect("sample serializes"));
            out.push('\n');
        }
        out
    }

    /// CSV over the sample records, columns in sorted key order.
    pub fn to_csv(&self) -> String {
        let mut columns: Vec<String> = Vec::new();
        for s in &self.samples {
            if let Value::Object(fields) = s {
                for k in fields.keys() {
                    if !columns.contains(k) {
                        columns.push(k.clone());
                    }
                }
            }
        }
        columns.sort();
        let mut out = columns.join(",");
        out.push('\n');
        for s in &self.samples {
            let row: Vec<String> = columns
                .iter()
                .map(|col| match s.get(col) {
                    Some(v) => csv_cell(v),
                    None => String::new(),
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Jsonl => self.to_jsonl(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Jsonl,
    Csv,
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// JSON number from a finite float.
pub fn json_f64(x: f64) -> Value {
    assert!(x.is_finite(), "non-finite value in report: {x}");
    json!(x)
}

/// Wilson score interval at 99% confidence for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "Wilson interval needs at least one trial");
    assert!(successes <= trials, "more successes than trials");
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_99 * Z_99;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_99 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}
