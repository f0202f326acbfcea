//! Named identity checks, runnable on their own or as part of the acceptance
//! suite.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{self, matrices, FamilySpec};
use crate::hessian::{
    check_gradient_relations, rational, verify_identity, verify_proportionality, Expr,
    IdentityReport, LinearChange, Method, SampleConfig, Verdict,
};
use crate::linalg::{adjugate, binary_resultant, determinant, pfaffian, PolyMatrix};
use crate::ring::{Field, Poly, VarSet};

/// Every identity id understood by [`run_identity`], sorted.
pub const IDENTITY_IDS: [&str; 15] = [
    "adjugate",
    "adjugate-twice",
    "cauchy-schwartz-proportional",
    "closed-form",
    "dual-cayley-relations",
    "euler",
    "hess-divisibility",
    "lagrange",
    "pencil-reduction",
    "pencil-relations",
    "pf-square",
    "resultant-invariance",
    "segre-alpha",
    "segre-beta",
    "segre-gamma",
];

/// Size parameters and inner polynomial for a named identity; unset fields
/// take the smallest interesting value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub g: Option<String>,
}

/// Runs the identity named `id`. Unknown ids are an [`Error::Invalid`].
pub fn run_identity(id: &str, params: &IdentityParams, cfg: &SampleConfig) -> Result<IdentityReport> {
    let n = params.n;
    let m = params.m;
    match id {
        "segre-alpha" => segre_alpha(n.unwrap_or(2), cfg),
        "segre-beta" => segre_beta(n.unwrap_or(2), cfg),
        "segre-gamma" => segre_gamma(m.unwrap_or(2), cfg),
        "lagrange" => lagrange(n.unwrap_or(1)),
        "pf-square" => pf_square(m.unwrap_or(1)),
        "adjugate" => adjugate_identity(n.unwrap_or(2)),
        "adjugate-twice" => adjugate_twice(n.unwrap_or(2)),
        "euler" => pencil_euler(&inner_or(params, "z1^2 + z2^2 + z3^2")?),
        "pencil-relations" => {
            let inst = families::pencil(&inner_or(params, "z1^2 + z2^2 + z3^2")?)?;
            Ok(check_gradient_relations(id, &inst.polynomial, &inst.gradient_relations)?
                .with_formula("f_xi f_yj - f_xj f_yi = 0"))
        }
        "dual-cayley-relations" => {
            let g = inner_or(params, "z0*z2 - z1^2")?;
            let r = m.unwrap_or(2);
            let inst = families::dual_cayley(&g, r, g.vars().len() + r - 1)?;
            Ok(check_gradient_relations(id, &inst.polynomial, &inst.gradient_relations)?
                .with_formula("f_a(i,l) f_a(k,m) - f_a(i,m) f_a(k,l) = 0"))
        }
        "pencil-reduction" => pencil_reduction(&inner_or(params, "z0*z2 - z1^2")?),
        "closed-form" => closed_form(n.unwrap_or(2)),
        "resultant-invariance" => resultant_invariance(n.unwrap_or(2), 5, cfg),
        "cauchy-schwartz-proportional" => cauchy_schwartz_proportional(cfg),
        "hess-divisibility" => hess_divisibility(n.unwrap_or(2)),
        _ => Err(Error::Invalid(format!(
            "unknown identity `{id}`; known: {}",
            IDENTITY_IDS.join(", ")
        ))),
    }
}

fn inner_or(params: &IdentityParams, default: &str) -> Result<Poly> {
    families::parse_inner(params.g.as_deref().unwrap_or(default))
}

fn exact(id: &str, ok: bool) -> IdentityReport {
    IdentityReport::new(id, Method::Exact, Verdict::from_bool(ok))
}

/// `hess(det X) = alpha det^((n+1)(n-1))`, sampled.
pub fn segre_alpha(n: usize, cfg: &SampleConfig) -> Result<IdentityReport> {
    let inst = families::generic_det(n)?;
    proportional("segre-alpha", &inst, cfg)
}

/// `hess(det S) = beta det^((n+2)(n-1)/2)`, sampled.
pub fn segre_beta(n: usize, cfg: &SampleConfig) -> Result<IdentityReport> {
    let inst = families::symmetric_det(n)?;
    proportional("segre-beta", &inst, cfg)
}

/// `hess(Pf) = gamma Pf^((2m+1)(m-1))`, sampled.
pub fn segre_gamma(m: usize, cfg: &SampleConfig) -> Result<IdentityReport> {
    let inst = families::pfaffian_form(m)?;
    proportional("segre-gamma", &inst, cfg)
}

fn proportional(id: &str, inst: &families::FamilyInstance, cfg: &SampleConfig) -> Result<IdentityReport> {
    let prop = inst
        .proportionality
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("{} has no proportionality claim", inst.spec.id)))?;
    let f = &inst.polynomial;
    let expected = prop.constant.map(rational);
    Ok(verify_proportionality(
        id,
        &Expr::hessian(f),
        &Expr::from(f).pow(prop.exponent),
        cfg,
        expected.as_ref(),
    )?
    .with_formula(prop.formula.clone()))
}

/// `hess = c f^3` for the quartic `|a|^2 |b|^2 - (a.b)^2` with vectors of
/// length 3; the constant is measured.
pub fn cauchy_schwartz_proportional(cfg: &SampleConfig) -> Result<IdentityReport> {
    let inst = families::cauchy_schwartz(1)?;
    proportional("cauchy-schwartz-proportional", &inst, cfg)
}

/// `sum_{i<j} (ai bj - aj bi)^2 = |a|^2 |b|^2 - (a.b)^2`, vectors of length
/// `n + 2`.
pub fn lagrange(n: usize) -> Result<IdentityReport> {
    let inst = families::cauchy_schwartz(n)?;
    let lhs = Expr::from(families::plucker_square_sum(n));
    let rhs = Expr::from(&inst.polynomial);
    Ok(
        verify_identity("lagrange", &lhs, &rhs, &SampleConfig::default(), Method::Exact)?
            .with_formula("sum_{i<j} (ai bj - aj bi)^2 = |a|^2 |b|^2 - (a.b)^2")
            .with_detail(format!("vectors of length {}", n + 2)),
    )
}

fn skew(size: usize) -> PolyMatrix {
    let vars = matrices::vars_without(matrices::skew_names(size), None);
    matrices::skew_matrix(size, &vars)
}

/// `Pf(A)^2 = det(A)` for the generic skew matrix of size `2m + 2`.
pub fn pf_square(m: usize) -> Result<IdentityReport> {
    if m < 1 {
        return Err(Error::Invalid("pf-square needs m >= 1".into()));
    }
    let a = skew(2 * m + 2);
    let ok = pfaffian(&a)?.pow(2) == determinant(&a)?;
    Ok(exact("pf-square", ok)
        .with_formula("Pf(A)^2 = det(A)")
        .with_detail(format!("{0}x{0} generic skew matrix", 2 * m + 2)))
}

fn generic(size: usize) -> PolyMatrix {
    let vars = matrices::vars_without(matrices::generic_names(size), None);
    matrices::generic_matrix(size, &vars)
}

/// `X adj(X) = det(X) I` for the generic `(n+1) x (n+1)` matrix.
pub fn adjugate_identity(n: usize) -> Result<IdentityReport> {
    let x = generic(n + 1);
    let det = determinant(&x)?;
    let lhs = x.checked_mul(&adjugate(&x)?)?;
    let rhs = PolyMatrix::identity(n + 1, x.vars(), x.field())?.scale(&det);
    Ok(exact("adjugate", lhs.entries() == rhs.entries())
        .with_formula("X adj(X) = det(X) I")
        .with_detail(format!("{0}x{0} generic matrix", n + 1)))
}

/// `adj(adj(X)) = det(X)^(n-1) X` for the generic `(n+1) x (n+1)` matrix.
pub fn adjugate_twice(n: usize) -> Result<IdentityReport> {
    if n < 1 {
        return Err(Error::Invalid("adjugate-twice needs n >= 1".into()));
    }
    let x = generic(n + 1);
    let det = determinant(&x)?;
    let lhs = adjugate(&adjugate(&x)?)?;
    let rhs = x.scale(&det.pow(n as u32 - 1));
    Ok(exact("adjugate-twice", lhs.entries() == rhs.entries())
        .with_formula("adj(adj(X)) = det(X)^(n-1) X")
        .with_detail(format!("{0}x{0} generic matrix", n + 1)))
}

/// `u f_u + v f_v = d f` for the pencil over `g` of degree `d`.
pub fn pencil_euler(g: &Poly) -> Result<IdentityReport> {
    let inst = families::pencil(g)?;
    let d = inst.degree / 2;
    let f = &inst.polynomial;
    let ok = f.euler_sum(&["u", "v"])? == f.scale_i64(i64::from(d));
    Ok(exact("euler", ok)
        .with_formula("u f_u + v f_v = d f")
        .with_detail(format!("d = {d}")))
}

/// The dual Cayley construction with `r = 1` equals the pencil over the same
/// `g` after renaming `a0_j -> x{j+1}`, `a1_j -> y{j+1}`, `b1_1 -> u`,
/// `b0_1 -> v`.
pub fn pencil_reduction(g: &Poly) -> Result<IdentityReport> {
    let dc = families::dual_cayley(g, 1, g.vars().len())?;
    let pencil = families::pencil(g)?.polynomial;
    let moved = dc
        .polynomial
        .rename(pencil.vars(), families::dual_cayley_to_pencil_name)?;
    Ok(exact("pencil-reduction", moved == pencil)
        .with_formula("g(B'_0, ..., B'_{N-1}) with r = 1 equals g(u*x - v*y)")
        .with_detail(format!("{} terms", pencil.num_terms())))
}

/// The resultant form of the scroll dual `S(1, b)` against the closed form,
/// up to one global sign.
pub fn closed_form(b: usize) -> Result<IdentityReport> {
    let res = families::scroll_dual(1, b)?.polynomial;
    let closed = families::scroll_dual_closed(b)?.polynomial;
    let sign = if res == closed {
        Some("+1")
    } else if res == -closed {
        Some("-1")
    } else {
        None
    };
    let mut report = exact("closed-form", sign.is_some())
        .with_formula("Res(w0 s + w1 t, sum zi s^(b-i) t^i) = sum (-w1)^(b-i) w0^i zi");
    report.measured_constant = sign.map(str::to_string);
    Ok(report)
}

/// `Res(h0, h1) = det(A)^d Res(g0, g1)` for `h_i = sum_j a_ij g_j`, with
/// `g0, g1` the generic binary forms of degree `d` and `changes` random
/// integer matrices `A`.
pub fn resultant_invariance(d: usize, changes: usize, cfg: &SampleConfig) -> Result<IdentityReport> {
    if d < 1 {
        return Err(Error::Invalid("resultant-invariance needs d >= 1".into()));
    }
    let (g0, g1) = generic_binary_pair(d)?;
    let base = binary_resultant(&g0, &g1, "s", "t")?;
    let mut failures = Vec::new();
    let mut dets = Vec::new();
    for k in 0..changes {
        let mut rng = cfg.trial_rng("resultant-invariance", k as u64);
        let (a, det) = loop {
            let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-5..=5));
            let det = a[0] * a[3] - a[1] * a[2];
            if det != 0 {
                break (a, det);
            }
        };
        let h0 = &g0.scale_i64(a[0]) + &g1.scale_i64(a[1]);
        let h1 = &g0.scale_i64(a[2]) + &g1.scale_i64(a[3]);
        let lhs = binary_resultant(&h0, &h1, "s", "t")?;
        let rhs = base.scale_i64(det.pow(d as u32));
        if lhs != rhs {
            failures.push(k);
        }
        dets.push(det.to_string());
    }
    Ok(exact("resultant-invariance", failures.is_empty())
        .with_formula("Res(h0, h1) = det(A)^d Res(g0, g1), h_i = sum_j a_ij g_j")
        .with_detail(if failures.is_empty() {
            format!("{changes} changes with det(A) in [{}]", dets.join(", "))
        } else {
            format!("failing changes: {failures:?}")
        }))
}

/// Generic binary forms `sum wi s^(d-i) t^i` and `sum zi s^(d-i) t^i`.
pub fn generic_binary_pair(d: usize) -> Result<(Poly, Poly)> {
    let mut names = vec!["s".to_string(), "t".to_string()];
    names.extend((0..=d).map(|i| format!("w{i}")));
    names.extend((0..=d).map(|i| format!("z{i}")));
    let vars = VarSet::new(names)?;
    let v = |n: &str| Poly::var(&vars, Field::Rational, n);
    let (s, t) = (v("s")?, v("t")?);
    let form = |prefix: &str| -> Result<Poly> {
        let mut acc = Poly::zero(&vars, Field::Rational);
        for i in 0..=d {
            let c = v(&format!("{prefix}{i}"))?;
            acc = &acc + &(&(&c * &s.pow((d - i) as u32)) * &t.pow(i as u32));
        }
        Ok(acc)
    };
    Ok((form("w")?, form("z")?))
}

/// `f^(N - dim X* - 1)` divides `hess f` for the generic determinant, with
/// `dim X* = 2n`.
pub fn hess_divisibility(n: usize) -> Result<IdentityReport> {
    let inst = families::generic_det(n)?;
    let f = &inst.polynomial;
    let big_n = inst.n_vars() - 1;
    let exponent = (big_n - 2 * n - 1) as u32;
    let hess = determinant(&crate::hessian::hessian_matrix(f))?;
    let ok = !hess.is_zero() && crate::ring::divides(&f.pow(exponent), &hess)?.is_some();
    Ok(exact("hess-divisibility", ok)
        .with_formula("f^(N - dim X* - 1) divides hess f")
        .with_detail(format!("exponent {exponent}")))
}

/// A random invertible change applied to a family instance, sparse for
/// instances in many variables to keep the expansion small.
pub fn transformed(spec: &FamilySpec, f: &Poly, cfg: &SampleConfig, k: u64) -> Result<Poly> {
    let n = f.vars().len();
    let fill = if n <= 8 { n } else { 1 };
    let mut rng = cfg.trial_rng(&format!("linear-change:{}", spec.id), k);
    LinearChange::random(n, fill, &mut rng).apply(f)
}
