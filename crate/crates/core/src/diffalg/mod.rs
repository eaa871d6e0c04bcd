//! Exact differential polynomials in one dependent variable and the mKdV hierarchy.

mod hierarchy;
mod poly;
mod text;

pub use hierarchy::{density_operator, generate_hierarchy, recursion_operator, recursion_step, HierarchyLevel, MAX_LEVEL};
pub use poly::{rational, CompiledPoly, DiffPoly, Monomial};
