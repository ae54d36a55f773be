//! Exact arithmetic over GF(p^m) and Z_v: fields, polynomials, matrices.

pub mod field;
pub mod matrix;
pub mod number;
pub mod poly;

pub use field::{FieldElement, FieldSpec};
pub use matrix::{matrix_order, Matrix};
pub use number::{euler_phi, gcd};
pub use poly::{companion_matrix, enumerate_primitive, is_primitive, poly_order, Poly};
