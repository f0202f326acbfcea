use super::det::determinant;
use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::ring::{Monomial, Poly, Scalar, VarSet};

/// Coefficients `c_0..c_deg` of a binary form `sum c_i s^(deg-i) t^i`, as
/// polynomials in the remaining variables. The zero form is accepted when
/// `deg` is given explicitly.
fn binary_coefficients(
    f: &Poly,
    s: &str,
    t: &str,
    params: &VarSet,
    deg: Option<u32>,
) -> Result<(u32, Vec<Poly>)> {
    let vars = f.vars();
    let (si, ti) = (vars.require(s)?, vars.require(t)?);
    if si == ti {
        return Err(Error::Invalid("binary form variables must differ".into()));
    }
    let deg = match (deg, f.is_zero()) {
        (Some(d), _) => d,
        (None, true) => {
            return Err(Error::Invalid("the zero form has no degree".into()));
        }
        (None, false) => f.degree_in(&[s, t])?,
    };
    let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg as usize + 1];
    for (m, c) in f.terms() {
        let (es, et) = (m.exponent(si), m.exponent(ti));
        if es + et != deg {
            return Err(Error::NotHomogeneous);
        }
        let rest: Vec<u32> = (0..vars.len())
            .filter(|&k| k != si && k != ti)
            .map(|k| m.exponent(k))
            .collect();
        buckets[et as usize].push((Monomial::from_exponents(&rest), c.clone()));
    }
    let coefs = buckets
        .into_iter()
        .map(|terms| Poly::from_terms(params, f.field(), terms))
        .collect::<Result<Vec<_>>>()?;
    Ok((deg, coefs))
}

fn sylvester_from(fc: &[Poly], gc: &[Poly], params: &VarSet, f: &Poly) -> Result<PolyMatrix> {
    let (a, b) = (fc.len() - 1, gc.len() - 1);
    let n = a + b;
    if n == 0 {
        return Err(Error::Invalid("both forms are constants".into()));
    }
    let zero = Poly::zero(params, f.field());
    PolyMatrix::from_fn(n, n, |i, j| {
        let (coefs, shift) = if i < b { (fc, i) } else { (gc, i - b) };
        match j.checked_sub(shift) {
            Some(k) if k < coefs.len() => coefs[k].clone(),
            _ => zero.clone(),
        }
    })
}

fn check_pair(f: &Poly, g: &Poly, s: &str, t: &str) -> Result<VarSet> {
    if f.vars() != g.vars() {
        return Err(Error::VarSetMismatch);
    }
    if f.field() != g.field() {
        return Err(Error::FieldMismatch("resultant operands".into()));
    }
    f.vars().require(s)?;
    f.vars().require(t)?;
    f.vars().without(&[s, t])
}

/// Sylvester matrix of binary forms `f` (degree a) and `g` (degree b) in
/// `s, t`: b shifted rows of f's coefficients, then a shifted rows of g's.
/// Entries live in the variable set with `s` and `t` removed.
pub fn sylvester_matrix(f: &Poly, g: &Poly, s: &str, t: &str) -> Result<PolyMatrix> {
    let params = check_pair(f, g, s, t)?;
    let (_, fc) = binary_coefficients(f, s, t, &params, None)?;
    let (_, gc) = binary_coefficients(g, s, t, &params, None)?;
    sylvester_from(&fc, &gc, &params, f)
}

/// Determinant of [`sylvester_matrix`].
pub fn binary_resultant(f: &Poly, g: &Poly, s: &str, t: &str) -> Result<Poly> {
    determinant(&sylvester_matrix(f, g, s, t)?)
}

/// `Res(df/ds, df/dt)` for a binary form of degree at least 2. For
/// `c0 s^2 + c1 s t + c2 t^2` this is `4 c0 c2 - c1^2`.
pub fn binary_discriminant(f: &Poly, s: &str, t: &str) -> Result<Poly> {
    let params = f.vars().without(&[s, t])?;
    let (d, _) = binary_coefficients(f, s, t, &params, None)?;
    if d < 2 {
        return Err(Error::Invalid(format!("discriminant needs degree >= 2, got {d}")));
    }
    let (_, fs) = binary_coefficients(&f.partial_derivative(s)?, s, t, &params, Some(d - 1))?;
    let (_, ft) = binary_coefficients(&f.partial_derivative(t)?, s, t, &params, Some(d - 1))?;
    determinant(&sylvester_from(&fs, &ft, &params, f)?)
}

/// `[d maps[i] / d vars[j]]`.
pub fn jacobian(maps: &[Poly], vars: &[&str]) -> Result<PolyMatrix> {
    if maps.is_empty() || vars.is_empty() {
        return Err(Error::Shape("jacobian needs at least one map and one variable".into()));
    }
    let entries = maps
        .iter()
        .flat_map(|m| vars.iter().map(move |v| m.partial_derivative(v)))
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(maps.len(), vars.len(), entries)
}
