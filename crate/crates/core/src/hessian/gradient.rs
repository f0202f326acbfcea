use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{PolyMatrix, ScalarMatrix, Structure};
use crate::ring::{Monomial, Poly};

/// Symmetric matrix of second partials, rows and columns in variable order.
pub fn hessian_matrix(f: &Poly) -> PolyMatrix {
    let n = f.vars().len();
    let grad: Vec<Poly> = (0..n).map(|i| f.derivative_index(i)).collect();
    let mut entries = vec![Poly::zero(f.vars(), f.field()); n * n];
    for i in 0..n {
        for j in i..n {
            let e = grad[i].derivative_index(j);
            entries[j * n + i] = e.clone();
            entries[i * n + j] = e;
        }
    }
    PolyMatrix::new(n, n, entries)
        .and_then(|m| m.with_structure(Structure::Symmetric))
        .expect("second partials of a polynomial form a symmetric matrix")
}

/// The partials of a homogeneous `f` of degree at least 2.
pub fn polar_gradient(f: &Poly) -> Result<Vec<Poly>> {
    let d = f.is_homogeneous().ok_or(Error::NotHomogeneous)?;
    if d < 2 {
        return Err(Error::Invalid(format!("the polar map needs degree >= 2, got {d}")));
    }
    Ok((0..f.vars().len()).map(|i| f.derivative_index(i)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub is_cone: bool,
    /// Basis of the linear relations `sum c_i df/dx_i = 0`; each vector is a
    /// vertex direction. Coefficients are rendered as text.
    pub vertex_directions: Vec<Vec<String>>,
}

/// Cone test: the partials are linearly dependent exactly when `f` omits a
/// variable after a linear change of coordinates.
pub fn is_cone(f: &Poly) -> Result<ConeReport> {
    let n = f.vars().len();
    if f.is_homogeneous().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let grad: Vec<Poly> = (0..n).map(|i| f.derivative_index(i)).collect();
    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for g in &grad {
        for (m, _) in g.terms() {
            let next = columns.len();
            columns.entry(m).or_insert(next);
        }
    }
    let field = f.field();
    // transpose of the coefficient matrix: its kernel holds the relations
    let cols = columns.len().max(1);
    let mut entries = vec![field.zero(); cols * n];
    for (i, g) in grad.iter().enumerate() {
        for (m, c) in g.terms() {
            entries[columns[m] * n + i] = c.clone();
        }
    }
    let m = ScalarMatrix::new(cols, n, field, entries)?;
    let kernel = m.kernel();
    Ok(ConeReport {
        is_cone: !kernel.is_empty(),
        vertex_directions: kernel
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect(),
    })
}
