//! Coefficient fields, monomials, polynomials, free modules and the
//! polynomial expression parser.

mod field;
mod module;
mod monomial;
mod parse;
mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use module::{FreeModule, Term, Vector};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, MAX_EXPONENT};
pub use poly::{Polynomial, Ring};
