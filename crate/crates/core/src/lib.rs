pub mod algebra;
mod dd;
pub mod error;
pub mod linalg;
pub mod polytope;
pub mod exceptional;
pub mod norms;
pub mod niceness;
pub mod bundle;
pub mod swtheory;
pub mod fuzz;
