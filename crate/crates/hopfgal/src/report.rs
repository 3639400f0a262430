//! Structured check reports shared by the library suites and the CLI.

use serde::Serialize;

pub const SCHEMA: &str = "report-v1";

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub preset: String,
    pub parameters: serde_json::Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub preset: String,
    pub parameters: serde_json::Value,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub timestamp: String,
}

impl Report {
    pub fn new(suite: &str, preset: &str, parameters: serde_json::Value) -> Self {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_default();
        Report {
            schema: SCHEMA,
            suite: suite.to_string(),
            preset: preset.to_string(),
            parameters,
            pass: true,
            checks: vec![],
            timestamp: ts,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn record(
        &mut self,
        check: &str,
        parameters: serde_json::Value,
        pass: bool,
        witness: Option<String>,
    ) {
        self.push(CheckResult {
            check: check.to_string(),
            preset: self.preset.clone(),
            parameters,
            pass,
            witness,
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} {} {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.preset,
                c.check,
                c.witness.as_deref().unwrap_or("")
            ));
        }
        out.push_str(&format!(
            "suite {}: {}\n",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}
