//! Density reports: one value, its per-term breakdown and the error budget
//! accumulated along the way.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Empirical,
    Prediction,
    Expansion,
}

/// Parameters echoed into every report.
#[derive(Debug, Clone, Serialize, Default)]
pub struct ReportParams {
    pub x: f64,
    pub l: f64,
    pub w_kind: String,
    pub phi_kind: String,
    pub sigma: f64,
    /// Truncation points and similar knobs that shaped the run.
    pub truncations: BTreeMap<String, f64>,
}

/// A 1-level density value with its decomposition.
///
/// Invariants: `value` equals the sum of `terms` to 1e-12 (enforced by
/// construction) and `error_budget` is the sum of all truncation and
/// quadrature bounds incurred, hence nonnegative.
#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub value: f64,
    pub method: Method,
    pub terms: BTreeMap<String, f64>,
    pub error_budget: f64,
    pub params: ReportParams,
    pub diagnostics: BTreeMap<String, f64>,
}

impl DensityReport {
    /// Assemble from named terms; the value is their fixed-order sum.
    pub fn from_terms(
        method: Method,
        terms: BTreeMap<String, f64>,
        error_budget: f64,
        params: ReportParams,
    ) -> Self {
        let vals: Vec<f64> = terms.values().copied().collect();
        let value = crate::par::tree_sum(&vals);
        DensityReport {
            value,
            method,
            terms,
            error_budget: error_budget.max(0.0),
            params,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn with_diagnostic(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    /// Bookkeeping identity: value = Σ terms.
    pub fn is_consistent(&self) -> bool {
        let vals: Vec<f64> = self.terms.values().copied().collect();
        (crate::par::tree_sum(&vals) - self.value).abs() <= 1e-12 * (1.0 + self.value.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_value_is_sum_of_terms() {
        let mut terms = BTreeMap::new();
        terms.insert("a".into(), 0.25);
        terms.insert("b".into(), -0.125);
        terms.insert("c".into(), 1e-9);
        let r = DensityReport::from_terms(Method::Expansion, terms, 1e-10, ReportParams::default());
        assert!(r.is_consistent());
        assert!((r.value - (0.25 - 0.125 + 1e-9)).abs() < 1e-15);
        assert!(r.error_budget >= 0.0);
    }
}
