//! Exact coefficient fields, sparse polynomials and Gröbner bases.

pub(crate) mod coords;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod ring;
pub mod solve;

pub use coords::{in_span, same_span};
pub use field::{Field, FieldSpec, Scalar};
pub use groebner::{elimination_ideal, groebner, GroebnerBasis};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use polynomial::{evaluate, poly_arith, poly_scale, AlgebraElem, ArithOp, Polynomial};
pub use ring::{fresh_name, Guards, PolyRing, RingRef};
pub use solve::{field_solutions, Solutions};
