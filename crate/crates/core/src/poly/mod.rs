//! Exact coefficient fields, monomials, monomial orders and multivariate
//! polynomials with the division algorithm.

pub mod field;
pub mod monomial;
pub mod polynomial;

pub use field::{Field, FieldElement};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{poly_arith, poly_divmod, ArithOp, PolyRing, Polynomial, Term};
