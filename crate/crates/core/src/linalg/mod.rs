//! Matrices over local fields: elimination, characteristic polynomials,
//! Newton polygons, slope factorization and the unit-root projector.

mod matrix;
mod newton;
mod projector;

pub use matrix::{in_span, quotient_basis, Echelon, PMatrix};
pub use newton::{ordinary_cut, slope_factorization, sylvester_solve, NewtonPolygon};
pub use projector::{
    factorial_power_limit, linearize_frobenius, projector_trial, random_integral_matrix, slope_projector, unit_root_projector, ProjectorTrial,
};
