//! Exact Laurent-polynomial arithmetic in `t^(1/2)`, `x_1..x_n`, `y_1..y_N`.
//!
//! Coefficients are arbitrary-precision integers. The deformation parameter's
//! exponent is stored doubled, so half-integer powers of `t` are exact; modules
//! that prefer to call the parameter `q` reinterpret or invert the exponent at
//! the display boundary. [`Mono`] carries a monomial order that is compatible
//! with multiplication (needed for exact division) and also fixes the term
//! order used for display and serialization.

mod frac;
mod mono;
mod parse;
mod poly;

pub use frac::BinomialFraction;
pub use mono::Mono;
pub use parse::parse_poly;
pub use poly::LaurentPoly;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("denominator factor (1 - m) vanishes: m = 1")]
    ZeroDenominator,
    #[error("specialization hits a pole: {0}")]
    Pole(String),
    #[error("fraction did not reduce to a polynomial")]
    NonPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
