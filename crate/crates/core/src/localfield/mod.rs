//! Capped-precision arithmetic in finite extensions of `Q_p`.

mod element;
mod field;
mod literal;
mod poly;
mod ring;

pub use element::LocalFieldElement;
pub use field::{EisensteinPoly, LocalField};
pub use literal::{parse_scalar, ScalarLiteral};
pub use poly::{bezout_pair, sylvester_resultant, verify_bezout, FpPolynomial, Poly, Poly2};
pub use ring::{berkowitz, determinant, Ring};

pub(crate) use field::is_prime;
