//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Direction of a threshold comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// The check holds when defect < threshold.
    Below,
    /// The check holds when defect > threshold.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub threshold: f64,
    pub bound: Bound,
    /// Whether the inequality holds.
    pub holds: bool,
    /// Negative controls are expected not to hold.
    pub expect_failure: bool,
    /// `holds != expect_failure`.
    pub pass: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, defect: f64, threshold: f64) -> Self {
        Self::build(name.into(), defect, threshold, Bound::Below, false)
    }

    pub fn above(name: impl Into<String>, defect: f64, threshold: f64) -> Self {
        Self::build(name.into(), defect, threshold, Bound::Above, false)
    }

    /// A check that is supposed to fail; it passes when it does.
    pub fn negative_control(self) -> Self {
        Self::build(self.name, self.defect, self.threshold, self.bound, true)
    }

    /// A check whose computation itself errored.
    pub fn errored(name: impl Into<String>, threshold: f64) -> Self {
        Self::build(name.into(), f64::NAN, threshold, Bound::Below, false)
    }

    fn build(name: String, defect: f64, threshold: f64, bound: Bound, expect_failure: bool) -> Self {
        // NaN never satisfies either bound.
        let holds = match bound {
            Bound::Below => defect < threshold,
            Bound::Above => defect > threshold,
        };
        Check {
            name,
            defect,
            threshold,
            bound,
            holds,
            expect_failure,
            pass: holds != expect_failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Fixed-width table: one line per check.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = format!(
            "{:<width$}  {:>12}  {:>3}  {:>10}  {}\n",
            "check", "defect", "", "threshold", "result"
        );
        for c in &self.checks {
            let op = match c.bound {
                Bound::Below => "<",
                Bound::Above => ">",
            };
            let result = match (c.pass, c.expect_failure) {
                (true, false) => "PASS",
                (true, true) => "PASS (expected failure)",
                (false, _) => "FAIL",
            };
            out.push_str(&format!(
                "{:<width$}  {:>12.3e}  {:>3}  {:>10.1e}  {}\n",
                c.name, c.defect, op, c.threshold, result
            ));
        }
        out.push_str(&format!(
            "{} of {} checks passed in {:.0} ms\n",
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len(),
            self.wall_time_ms
        ));
        out
    }
}
