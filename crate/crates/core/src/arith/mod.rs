//! Exact arithmetic: rationals, sparse polynomials, univariate polynomials,
//! quotient-ring towers and the polynomial text format.

pub mod parse;
pub mod poly;
pub mod rational;
pub mod tower;
pub mod unipoly;

pub use parse::{parse_poly, parse_poly_any};
pub use poly::{Monomial, MultiPoly, Var};
pub use rational::{parse_rational, Rational};
pub use tower::{tower_reduce, Tower, TowerElement};
pub use unipoly::{substitute_rational, UniPoly};

/// `(content, primitive)` split of a polynomial.
pub fn content_primitive(p: &MultiPoly) -> (Rational, MultiPoly) {
    p.content_primitive()
}
