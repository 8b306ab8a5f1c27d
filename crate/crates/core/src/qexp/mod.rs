//! Truncated q-expansions, Dirichlet characters and the operators acting on them.

mod character;
mod series;

pub use character::{unit_group_generators, DirichletCharacter};
pub use series::QExpansion;
