//! Numerical thresholds shared by validation, projection and lifting.

use serde::{Deserialize, Serialize};

/// Allowed deviation of `|v_j|` from 1.
pub const TOL_UNIT: f64 = 1e-9;
/// Operator-norm tolerance for every identity-resolution check.
pub const TOL_IDENTITY: f64 = 1e-8;
/// `|P_H v_j|` must exceed this for `j` to enter the support set.
pub const TOL_PROJ: f64 = 1e-9;
/// Seeds whose residual norm falls below this are skipped during basis completion.
pub const PIVOT_TOL: f64 = 1e-8;
/// `ctilde_j >= 1 - TOL_SATURATED` counts as `ctilde_j = 1`.
pub const TOL_SATURATED: f64 = 1e-9;
/// Indices whose `|P_H v_j|` lies within this factor of `TOL_PROJ` are flagged.
pub const NEAR_THRESHOLD_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub unit: f64,
    pub identity: f64,
    pub proj: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: TOL_UNIT,
            identity: TOL_IDENTITY,
            proj: TOL_PROJ,
        }
    }
}
