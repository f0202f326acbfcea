//! Generic, symmetric and skew matrices of independent variables.
//!
//! Naming is fixed: `x{i}_{j}` for every entry of a generic matrix,
//! `s{i}_{j}` with `i <= j` for a symmetric one and `a{i}_{j}` with `i < j`
//! for a skew one, all 0-indexed and row-major.

use crate::linalg::{PolyMatrix, Structure};
use crate::ring::{Field, Poly, VarSet};

pub fn generic_names(size: usize) -> Vec<String> {
    (0..size)
        .flat_map(|i| (0..size).map(move |j| format!("x{i}_{j}")))
        .collect()
}

pub fn symmetric_names(size: usize) -> Vec<String> {
    (0..size)
        .flat_map(|i| (i..size).map(move |j| format!("s{i}_{j}")))
        .collect()
}

pub fn skew_names(size: usize) -> Vec<String> {
    (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| format!("a{i}_{j}")))
        .collect()
}

fn var_or_zero(vars: &VarSet, name: &str) -> Poly {
    match vars.index_of(name) {
        Some(i) => Poly::var_index(vars, Field::Rational, i),
        None => Poly::zero(vars, Field::Rational),
    }
}

/// Generic `size x size` matrix over `vars`; entries whose name is missing
/// from `vars` are zero, which is how coordinate slices are built.
pub fn generic_matrix(size: usize, vars: &VarSet) -> PolyMatrix {
    PolyMatrix::from_fn(size, size, |i, j| var_or_zero(vars, &format!("x{i}_{j}")))
        .expect("entries share one ring")
}

pub fn symmetric_matrix(size: usize, vars: &VarSet) -> PolyMatrix {
    PolyMatrix::from_fn(size, size, |i, j| {
        let (a, b) = (i.min(j), i.max(j));
        var_or_zero(vars, &format!("s{a}_{b}"))
    })
    .and_then(|m| m.with_structure(Structure::Symmetric))
    .expect("symmetric by construction")
}

pub fn skew_matrix(size: usize, vars: &VarSet) -> PolyMatrix {
    PolyMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => var_or_zero(vars, &format!("a{i}_{j}")),
        std::cmp::Ordering::Greater => -var_or_zero(vars, &format!("a{j}_{i}")),
        std::cmp::Ordering::Equal => Poly::zero(vars, Field::Rational),
    })
    .and_then(|m| m.with_structure(Structure::Skew))
    .expect("skew by construction")
}

/// Variable set from names, dropping `exclude`.
pub fn vars_without(names: Vec<String>, exclude: Option<&str>) -> VarSet {
    VarSet::new(names.into_iter().filter(|n| Some(n.as_str()) != exclude))
        .expect("generated names are valid identifiers")
}
