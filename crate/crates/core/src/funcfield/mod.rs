//! The function field `Q(t)` of the projective line: exact arithmetic, places,
//! valuations, heights and divisors.

mod divisor;
mod parse;
mod place;
mod poly;
mod ratfunc;

pub use divisor::Divisor;
pub use parse::{parse_poly, parse_rational_function, parse_rational_function_in};
pub use place::{
    degree_by_places, height_tuple, log_abs, log_plus, log_plus_norm, ord, places_of_poly,
    product_formula_sum, pullback, support_places, Place,
};
pub use poly::{Factorization, Poly};
pub use ratfunc::RationalFunction;

/// Exact rational numbers.
pub type Q = num_rational::BigRational;

/// Parses a rational literal such as `5`, `-3/4`.
pub fn parse_q(s: &str) -> Option<Q> {
    s.trim().parse().ok()
}
