use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub input_digest: String,
    pub truncation: usize,
    pub tol: f64,
    pub seed: u64,
}

/// Pass/fail report; `passed` holds exactly when every residual is within its tolerance.
#[derive(Debug, Serialize)]
pub struct Verdict {
    pub passed: bool,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub metadata: Metadata,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Verdict {
    pub fn new(metadata: Metadata) -> Self {
        Verdict { passed: true, residuals: BTreeMap::new(), tolerances: BTreeMap::new(), metadata, details: None }
    }

    /// Record `residual <= tolerance`; NaN never passes.
    pub fn check(&mut self, name: &str, residual: f64, tolerance: f64) -> &mut Self {
        self.passed &= residual <= tolerance;
        self.residuals.insert(name.to_string(), residual);
        self.tolerances.insert(name.to_string(), tolerance);
        self
    }

    pub fn details(&mut self, details: Value) -> &mut Self {
        self.details = Some(details);
        self
    }
}
