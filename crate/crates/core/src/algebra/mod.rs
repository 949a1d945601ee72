//! Exact scalar arithmetic and linear algebra over the rational-function field.

pub mod matrix;
pub mod poly;
pub mod ratfun;

pub use matrix::{dot, generic_rank, kernel_basis, outer, solve_linear_exact, Inconsistent, RfMatrix, Solution};
pub use poly::{Monomial, Poly};
pub use ratfun::RatFun;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
