//! Census of closures of the X part along two-vertex 4-valent graphs.

pub mod closures;

pub use closures::{all_closure_specs, build_closure, standalone_x, ClosureSpec, Matching};

pub mod census;
pub use census::{run_census, simply_connectable, with_towers, Certificate, CensusEntry};

pub mod xbranch;
pub use xbranch::{restore_x_branching, XBranching, X_BRANCHING};
