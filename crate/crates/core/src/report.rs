//! Pass/fail records shared by the check suites, the acceptance battery and the CLI.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Metric {
    Residual { max_residual: f64, tolerance: f64 },
    Counts { expected: i64, actual: i64 },
    Range { value: f64, lower: f64, upper: f64 },
    Bound { value: f64, lower: f64 },
    Flag {},
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    #[serde(rename = "check")]
    pub name: String,
    pub pass: bool,
    #[serde(flatten)]
    pub metric: Metric,
}

impl Check {
    /// Passes when `max_residual < tolerance` (NaN fails).
    pub fn residual(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Check {
        Check { name: name.into(), pass: max_residual < tolerance, metric: Metric::Residual { max_residual, tolerance } }
    }

    pub fn counts(name: impl Into<String>, expected: i64, actual: i64) -> Check {
        Check { name: name.into(), pass: expected == actual, metric: Metric::Counts { expected, actual } }
    }

    /// Passes when `lower <= value <= upper`.
    pub fn range(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Check {
        Check { name: name.into(), pass: value >= lower && value <= upper, metric: Metric::Range { value, lower, upper } }
    }

    /// Passes when `value > lower`.
    pub fn above(name: impl Into<String>, value: f64, lower: f64) -> Check {
        Check { name: name.into(), pass: value > lower, metric: Metric::Bound { value, lower } }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Check {
        Check { name: name.into(), pass, metric: Metric::Flag {} }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Running maximum that propagates NaN, so a NaN residual can never pass.
pub fn nan_max(acc: f64, x: f64) -> f64 {
    if acc.is_nan() || x.is_nan() {
        f64::NAN
    } else {
        acc.max(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::residual("x", f64::NAN, 1.0).pass);
        assert!(nan_max(0.0, f64::NAN).is_nan());
        assert!(Check::range("r", 4.0, 3.5, 4.5).pass);
        let json = serde_json::to_string(&Check::counts("c", 3, 3)).unwrap();
        assert_eq!(json, r#"{"check":"c","pass":true,"expected":3,"actual":3}"#);
    }
}
