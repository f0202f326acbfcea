//! Matrices over the polynomial ring and over F_p.

mod det;
mod matrix;
mod pfaffian;
mod resultant;

pub use det::{adjugate, all_minors, cofactor_determinant, combinations, determinant, minor, Minor};
pub use matrix::{det_mod_p, rank_mod_p, scalar_rank, MatrixJson, ModMatrix, PolyMatrix, ScalarMatrix, Structure};
pub use pfaffian::{pfaffian, pfaffian_scalar};
pub use resultant::{binary_discriminant, binary_resultant, jacobian, sylvester_matrix};

#[cfg(test)]
mod tests;
