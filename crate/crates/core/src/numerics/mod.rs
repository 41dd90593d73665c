//! Exact rationals, enclosures, bases and certified root solving.

mod beta;
mod enclosure;
mod field;
mod poly;
mod solve;

pub use beta::{BetaKind, BetaSpec, DEFAULT_PRECISION};
pub use enclosure::{
    dyadic_ceil, dyadic_floor, ln_rational, log2_biguint, parse_rational, pow2, rat, rational_to_f64,
    to_decimal, Enclosure, Rounding,
};
pub use field::FieldElem;
#[allow(unused_imports)]
pub(crate) use field::Field;
pub use poly::Poly;
pub use solve::{solve_unit_equation, solve_unit_equation_truncated};
