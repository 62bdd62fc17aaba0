//! Exact arithmetic: prime fields, matrices over them, Laurent polynomials, interpolation.

pub mod field;
pub mod interp;
pub mod laurent;
pub mod matrix;
pub mod ratlin;

pub use field::PrimeField;
pub use interp::{interpolate_int, interpolate_poly, RationalPoly};
pub use laurent::{laurent_mul, LaurentPoly};
pub use matrix::{mat_rank, MatrixFq};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
