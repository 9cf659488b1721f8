//! Exact commutative algebra over `F_p` and `Q`: Groebner bases, finitely
//! presented modules over quotient rings, derivations, Kaehler
//! differentials, ring classification and the Frobenius functor.

pub mod classify;
pub mod derivation;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideals;
pub mod kaehler;
pub mod linalg;
pub mod module;
pub mod par;
pub mod poly;
pub mod quotient;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::{Monomial, MonomialOrder, OrderKind, PolyRing, Polynomial};
