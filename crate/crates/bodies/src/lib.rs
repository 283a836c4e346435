//! Concrete bodies in John position and their sections.

mod canonical;
mod error;
mod hadamard;
mod kp;
mod polytope;

pub use canonical::{cross_polytope_ball, cube_decomposition, simplex_decomposition, standard_basis_decomposition};
pub use error::{BodiesError, Result};
pub use hadamard::{hadamard_decomposition, hadamard_section_exact, sylvester_hadamard};
pub use kp::{KpBall, KpSection};
pub use polytope::{nonsym_section_polytope, section_polytope, HPolytopeSection, DEDUP_TOL};
