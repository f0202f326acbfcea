//! Exact computer algebra for projective hypersurfaces with vanishing
//! hessian: polynomial arithmetic, polynomial matrices, hessian rank
//! profiles, and reproducible identity checks.

pub mod error;
pub mod families;
pub mod hessian;
pub mod linalg;
pub mod ring;
pub mod suite;

pub use error::{Error, Result};
pub use linalg::{PolyMatrix, ScalarMatrix, Structure};
pub use ring::{Field, Fp, Monomial, Poly, Scalar, VarSet};
