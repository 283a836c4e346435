//! Ground truth for the bounds: seeded Monte-Carlo and exact volumes of
//! sections, a numerical check of the Parseval identity, and oracles for the
//! Wills functional and the first intrinsic volume.

mod error;
mod geometry;
mod mc;
mod parseval;
mod wills;

pub use error::{OracleError, Result};
pub use geometry::{check_bounded, exact_volume_smallk, vertices, MAX_EXACT_DIM};
pub use mc::{ball_volume, mc_kp_section, mc_kp_section_volume, mc_volume, McEstimate, MIN_SAMPLES};
pub use parseval::{
    parseval_check, parseval_check_with, sine_product_moment, ParsevalCheck, ParsevalGate, ParsevalOptions,
    MAX_FACTORS,
};
pub use wills::{
    distance_to_polytope, fibonacci_sphere, v1_oracle, v1_oracle_with, wills_oracle, DYKSTRA_MAX_CYCLES,
    DYKSTRA_TOL, SPHERE_DIRECTIONS,
};
