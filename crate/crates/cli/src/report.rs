//! Versioned JSON report documents.

use std::time::Duration;

use djkm_core::report::Report;
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

/// Violations listed per section; the counts always cover all of them.
pub const MAX_LISTED: usize = 50;

#[derive(Debug, Clone)]
pub struct ReportDocument {
    pub task: Value,
    pub sections: Vec<(String, Report)>,
    pub wall_time: Duration,
}

impl ReportDocument {
    pub fn new(task: Value) -> Self {
        ReportDocument {
            task,
            sections: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn push(&mut self, name: &str, report: Report) {
        self.sections.push((name.to_string(), report));
    }

    pub fn checked(&self) -> usize {
        self.sections.iter().map(|(_, r)| r.checked).sum()
    }

    pub fn failed(&self) -> usize {
        self.sections.iter().map(|(_, r)| r.failed()).sum()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// The wall time is left out when `with_time` is false, so that equal
    /// runs give equal bytes.
    pub fn to_json(&self, with_time: bool) -> Value {
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|(name, r)| {
                let listed: Vec<Value> = r
                    .violations
                    .iter()
                    .take(MAX_LISTED)
                    .map(|v| json!({"witness": v.witness, "residual": v.residual}))
                    .collect();
                json!({
                    "name": name,
                    "counts": counts(r.checked, r.failed()),
                    "violations": listed,
                    "violations_omitted": r.failed().saturating_sub(MAX_LISTED),
                })
            })
            .collect();
        let mut doc = json!({
            "schema": SCHEMA,
            "tool": "djkm",
            "version": env!("CARGO_PKG_VERSION"),
            "task": self.task,
            "counts": counts(self.checked(), self.failed()),
            "sections": sections,
        });
        if with_time {
            doc["wall_time_s"] = json!(self.wall_time.as_secs_f64());
        }
        doc
    }

    /// One line per section plus a total.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (name, r) in &self.sections {
            out.push_str(&format!(
                "{:<5} {name}: {} checked, {} failed\n",
                if r.passed() { "ok" } else { "FAIL" },
                r.checked,
                r.failed()
            ));
            if let Some(v) = r.violations.first() {
                out.push_str(&format!("      first: {} -> {}\n", v.witness, v.residual));
            }
        }
        out.push_str(&format!(
            "total: {} checked, {} failed ({:.2?})\n",
            self.checked(),
            self.failed(),
            self.wall_time
        ));
        out
    }
}

fn counts(checked: usize, failed: usize) -> Value {
    json!({"checked": checked, "passed": checked - failed, "failed": failed})
}

/// Reads the counts back out of a written report.
pub fn failed_in(doc: &Value) -> Option<u64> {
    if doc.get("schema")?.as_u64()? != SCHEMA {
        return None;
    }
    doc.get("counts")?.get("failed")?.as_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use djkm_core::report::Violation;

    #[test]
    fn counts_and_exit_codes_agree() {
        let mut doc = ReportDocument::new(json!({"kind": "test"}));
        doc.push(
            "a",
            Report {
                checked: 3,
                violations: vec![],
            },
        );
        assert_eq!(doc.exit_code(), 0);
        let v = doc.to_json(false);
        assert_eq!(v["counts"], json!({"checked": 3, "passed": 3, "failed": 0}));
        assert!(v.get("wall_time_s").is_none());
        assert_eq!(failed_in(&v), Some(0));

        let mut bad = Report::default();
        for i in 0..60 {
            bad.record(Some(Violation {
                witness: format!("w{i}"),
                residual: "1".into(),
            }));
        }
        doc.push("b", bad);
        assert_eq!(doc.exit_code(), 1);
        let v = doc.to_json(true);
        assert_eq!(v["counts"]["failed"], json!(60));
        assert_eq!(v["sections"][1]["violations"].as_array().unwrap().len(), MAX_LISTED);
        assert_eq!(v["sections"][1]["violations_omitted"], json!(10));
        assert!(v["wall_time_s"].is_number());
        assert_eq!(failed_in(&v), Some(60));
        assert_eq!(failed_in(&json!({"schema": 2, "counts": {"failed": 0}})), None);
    }
}
