//! Upper and lower bounds for the volume of central sections `K ∩ H`.
//!
//! Symmetric bodies are described by a projected decomposition
//! ([`ProjectionProfile`](slicebound_decomp::ProjectionProfile)); `K_p` balls by a
//! [`KpSection`](slicebound_bodies::KpSection); non-symmetric bodies by a
//! [`NonsymLift`](slicebound_decomp::NonsymLift). Each `bound_*` function enforces
//! its hypotheses and fails with [`BoundError::Gate`] otherwise; the matching
//! `*_formula` evaluates without the check. [`BoundReport`] collects named entries.

mod error;
mod gate;
mod kp;
mod nonsym;
mod report;
mod symmetric;
mod wills;

pub use error::{BoundError, Result};
pub use gate::{Gate, GATE_SLACK};
pub use kp::{
    bound_k1_intermediate, bound_k1_lower, bound_k1_upper, bound_kp_lower, bound_kp_lower_with, bound_kp_upper,
    k1_gate, k1_intermediate_formula, k1_lower_formula, k1_upper_formula, unit_ball_volume,
};
pub use nonsym::{bound_nonsym_fourier, bound_nonsym_hyperplane, kappa_gate, nonsym_fourier_formula, simplex_volume};
pub use report::{
    evaluate, formula_for, gate_for, inputs_digest, BoundEntry, BoundInputs, BoundName, BoundReport, Direction,
    ReportMetadata, Skipped,
};
pub use slicebound_bodies::{KpBall, KpSection};
pub use symmetric::{
    bound_ab_old, bound_mean_width, bound_symmetric_case1, bound_symmetric_case1_coarse, bound_symmetric_case2,
    compare_bl_direct_vs_parseval, gamma_karamata_product, half_weight_gate, symmetric_case1_coarse_formula,
    symmetric_case1_formula, symmetric_case2_formula, symmetric_case2_gate, RouteComparison, SATURATION,
};
pub use wills::{
    bound_volume_via_wills, bound_volume_via_wills_majorized, bound_wills_functional, wills_functional_gate,
};
