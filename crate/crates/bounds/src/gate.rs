use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

/// Slack allowed below the 1/2 thresholds.
pub const GATE_SLACK: f64 = 1e-12;

/// A theorem hypothesis and whether the input meets it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub required_condition: String,
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub offending: Vec<usize>,
}

impl Gate {
    pub fn always(condition: &str) -> Self {
        Self {
            required_condition: condition.to_owned(),
            satisfied: true,
            offending: Vec::new(),
        }
    }

    pub fn check(condition: &str, satisfied: bool) -> Self {
        Self {
            required_condition: condition.to_owned(),
            satisfied,
            offending: Vec::new(),
        }
    }

    /// Satisfied when every value is at least `min - GATE_SLACK`.
    pub fn at_least(condition: &str, values: &[f64], min: f64) -> Self {
        let offending: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v < min - GATE_SLACK)
            .map(|(j, _)| j)
            .collect();
        Self {
            required_condition: condition.to_owned(),
            satisfied: offending.is_empty(),
            offending,
        }
    }

    pub fn and(mut self, other: Gate) -> Gate {
        self.required_condition = format!("{} and {}", self.required_condition, other.required_condition);
        self.satisfied &= other.satisfied;
        self.offending.extend(other.offending);
        self
    }

    pub fn enforce(&self, bound: &'static str) -> Result<()> {
        if self.satisfied {
            Ok(())
        } else {
            Err(BoundError::Gate {
                bound,
                condition: self.required_condition.clone(),
                offending: self.offending.clone(),
            })
        }
    }
}
