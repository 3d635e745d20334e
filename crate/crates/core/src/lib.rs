//! Shadow calculus toolkit: boundary-decorated simple polyhedra, shadows of
//! link diagrams, a census of closures of the X part, and cusped hyperbolic
//! triangulations with their geometric solutions.

pub mod classify;
pub mod diagram;
pub mod hyp;
pub mod poly;
