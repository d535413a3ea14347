//! Exact computational commutative algebra: Gröbner bases over graded free
//! modules, minimal graded free resolutions and Betti tables, Hilbert
//! series and coefficients, tangent cones of local quotients, Koszul
//! homology, and checkers that test the Cohen-Macaulay criteria for
//! associated graded modules on concrete instances.

pub mod groebner;
pub mod hilbert;
pub mod koszul;
pub mod linalg;
pub mod local;
pub mod resolution;
pub mod ring;
pub mod theorems;

mod error;

pub use error::Error;

/// Run a generic computation over the field named by a [`ring::FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$field:ident| $body:expr) => {
        match $spec {
            $crate::ring::FieldSpec::Prime(p) => {
                let $field = $crate::ring::PrimeField::new(p)?;
                $body
            }
            $crate::ring::FieldSpec::Rational => {
                let $field = $crate::ring::Rationals;
                $body
            }
        }
    };
}
