//! Arithmetic over GF(2)[X] and GF(2^m).

pub mod factor;
pub mod field;
mod mersenne;
pub mod poly;

pub use factor::{
    classify, default_primitive, factorize, is_irreducible, is_primitive, poly_order, primitive_polynomials,
    FactorReport,
};
pub use field::{field_trace, FieldContext, FieldElement};
pub use poly::{BinaryPolynomial, Degree};
