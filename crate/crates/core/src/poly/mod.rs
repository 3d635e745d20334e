//! Boundary-decorated simple polyhedra: model, validation, invariants, moves.

pub mod branching;
pub mod cw;
pub mod format;
pub mod group;
pub mod homology;
pub mod iso;
pub mod model;
pub mod moves;
pub mod validate;

pub use model::*;
pub use validate::{Structure, Violation};
