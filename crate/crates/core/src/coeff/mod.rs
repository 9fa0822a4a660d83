//! Exact coefficients: the field K (Q or F_p) and the graded Laurent ring K[x^m, x^-m].

mod field;
mod laurent;

pub use field::{Field, Scalar};
pub use laurent::LaurentPoly;

pub(crate) use field::is_prime;
