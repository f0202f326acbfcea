//! Exact sparse multivariate polynomials over Q and F_p.

mod modular;
mod poly;
pub mod scalar;
pub mod text;

pub use modular::ModPoly;
pub use poly::{divides, Monomial, Poly, VarSet};
pub use scalar::{Field, Fp, Scalar};
pub use text::{format, parse, PolyJson, PolyText};

/// Parses `text` over the given variable names. Convenience for tests and
/// family generators.
pub fn poly_in(names: &[&str], text: &str) -> crate::Result<Poly> {
    let vars = VarSet::new(names.iter().copied())?;
    parse(text, Some(&vars))
}

#[cfg(test)]
mod tests;
