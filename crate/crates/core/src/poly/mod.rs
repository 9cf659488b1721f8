//! Monomials, term orders and sparse multivariate polynomials.

mod monomial;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use polynomial::{cmp_leading, poly_arith, PolyOp, Polynomial};
pub use ring::PolyRing;
