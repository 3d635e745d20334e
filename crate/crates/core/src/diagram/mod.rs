//! Link diagrams (planar diagram codes) and their shadows.

pub mod faces;
pub mod pd;
pub mod shadow;

pub use faces::{diagram_faces, Face, FaceStep};
pub use pd::{parse_pd, LinkDiagram, PdError};
pub use shadow::{
    build_star_shadow, reduce_with_best_orientations, remove_outer_region, RegionOrigin,
    ShadowError, StarShadow,
};
