use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Assumed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::Assumed => "assumed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Field order is the serialized order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl ScenarioReport {
    /// No check failed or errored; `assumed` counts as passing.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Assumed))
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One report as an object, several as an array.
pub fn render_json(reports: &[ScenarioReport]) -> String {
    let s = match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    };
    s.expect("reports serialize") + "\n"
}

pub fn render_text(reports: &[ScenarioReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let verdict = if r.passed() { "ok" } else { "FAILED" };
        let _ = writeln!(s, "{} (seed {}, {} ms): {verdict}", r.scenario, r.seed, r.elapsed_ms);
        for c in &r.checks {
            let _ = writeln!(s, "  {:<8}{}: {}", c.status.as_str(), c.name, c.detail);
        }
    }
    s
}
