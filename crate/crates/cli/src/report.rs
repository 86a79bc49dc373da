use nivat_core::sft::BudgetSpent;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input::InputDigest;

/// Everything printed by a subcommand. Only `wall_time_ms` varies between
/// identical runs; `result` is the reproducible payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_spent: Option<BudgetSpent>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn input(&self, name: &str) -> Option<&InputDigest> {
        self.inputs.iter().find(|d| d.name == name)
    }
}
