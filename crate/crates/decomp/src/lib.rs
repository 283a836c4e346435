//! John decompositions of the identity, subspaces, projected systems and their lifts.
//!
//! A decomposition is a family `(c_j, v_j)` with `sum c_j v_j v_j^T = Id_n`.
//! Projecting onto a subspace `H` gives the weights and thresholds every section
//! bound is built from; [`lift`] extends the projected system to an orthonormal
//! frame, and [`lift_nonsymmetric`] handles centered systems of non-symmetric bodies.

mod decomposition;
mod error;
mod lift;
pub mod linalg;
mod nonsym;
mod projection;
mod subspace;
mod tolerances;

pub use decomposition::{Check, JohnDecomposition, RawDecomposition, ValidationReport, MAX_VECTORS};
pub use error::{DecompError, Result};
pub use lift::{lift, Lift};
pub use nonsym::{lift_nonsymmetric, NonsymLift};
pub use projection::{project, ProjectedDecomposition, ProjectionProfile};
pub use subspace::{random_rotation, Subspace, SubspaceSpec};
pub use tolerances::{Tolerances, NEAR_THRESHOLD_FACTOR, PIVOT_TOL, TOL_IDENTITY, TOL_PROJ, TOL_SATURATED, TOL_UNIT};
