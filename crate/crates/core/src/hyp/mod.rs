//! Cusped hyperbolic triangulations: the ten-tetrahedron sign double cover
//! of the 4-simplex boundary, gluing/completeness equations, Newton solves,
//! volumes, cusp moduli, and pants regluings.

pub mod cover;
pub mod cusp;
pub mod equations;
pub mod reglue;
pub mod solve;
pub mod tri;
pub mod volume;

pub use cover::{build_double_cover, build_pentachoron_complex, deck_involution, gf2_face_signs};
pub use cusp::{cusp_moduli, exact_regular_moduli, CuspData};
pub use equations::{gluing_equations, EquationSystem};
pub use reglue::{apply_regluing, pants_cut, search_regluings, shipped_variants, Regluing, ReglueError};
pub use solve::{perturbed_regular, solve_shapes, ShapeSolution, SolveError, REGULAR_SHAPE};
pub use tri::{parse_triangulation, serialize_triangulation, IdealTriangulation, TriError};
pub use volume::{total_volume, volume_constants, volume_formula, VolumeConstants};
