use std::collections::HashMap;

use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{log10_failure_bound, SampleConfig};
use super::gradient::hessian_matrix;
use crate::error::{Error, Result};
use crate::linalg::{determinant, ModMatrix, PolyMatrix};
use crate::ring::scalar::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};
use crate::ring::{Field, Fp, ModPoly, Poly, Scalar, VarSet};

/// A polynomial-valued expression that can be expanded exactly or evaluated
/// pointwise without expansion. `Hessian(f)` stands for `det H(f)`.
#[derive(Debug, Clone)]
pub enum Expr {
    Poly(Poly),
    Hessian { f: Poly, h: PolyMatrix },
    Pow(Box<Expr>, u32),
    Scale(BigRational, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl From<Poly> for Expr {
    fn from(p: Poly) -> Self {
        Expr::Poly(p)
    }
}

impl From<&Poly> for Expr {
    fn from(p: &Poly) -> Self {
        Expr::Poly(p.clone())
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;

    fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;

    fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;

    fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }
}

impl Expr {
    pub fn hessian(f: &Poly) -> Expr {
        Expr::Hessian {
            f: f.clone(),
            h: hessian_matrix(f),
        }
    }

    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn scale(self, c: i64) -> Expr {
        Expr::Scale(BigRational::from_integer(c.into()), Box::new(self))
    }

    pub fn scale_rational(self, c: BigRational) -> Expr {
        Expr::Scale(c, Box::new(self))
    }

    pub fn vars(&self) -> &VarSet {
        match self {
            Expr::Poly(p) | Expr::Hessian { f: p, .. } => p.vars(),
            Expr::Pow(e, _) | Expr::Scale(_, e) => e.vars(),
            Expr::Mul(a, _) | Expr::Add(a, _) | Expr::Sub(a, _) => a.vars(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Expr::Poly(p) | Expr::Hessian { f: p, .. } => p.field(),
            Expr::Pow(e, _) | Expr::Scale(_, e) => e.field(),
            Expr::Mul(a, _) | Expr::Add(a, _) | Expr::Sub(a, _) => a.field(),
        }
    }

    fn check_ring(&self) -> Result<()> {
        let pairs = match self {
            Expr::Poly(_) | Expr::Hessian { .. } => return Ok(()),
            Expr::Pow(e, _) | Expr::Scale(_, e) => return e.check_ring(),
            Expr::Mul(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) => (a, b),
        };
        if pairs.0.vars() != pairs.1.vars() {
            return Err(Error::VarSetMismatch);
        }
        if pairs.0.field() != pairs.1.field() {
            return Err(Error::FieldMismatch("identity operands".into()));
        }
        pairs.0.check_ring()?;
        pairs.1.check_ring()
    }

    /// Upper bound on the total degree of the expanded expression.
    pub fn degree_bound(&self) -> u64 {
        match self {
            Expr::Poly(p) => u64::from(p.total_degree().unwrap_or(0)),
            Expr::Hessian { f, .. } => {
                let d = u64::from(f.total_degree().unwrap_or(0));
                f.vars().len() as u64 * d.saturating_sub(2)
            }
            Expr::Pow(e, k) => e.degree_bound() * u64::from(*k),
            Expr::Scale(_, e) => e.degree_bound(),
            Expr::Mul(a, b) => a.degree_bound() + b.degree_bound(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
        }
    }

    /// Full symbolic expansion.
    pub fn expand(&self) -> Result<Poly> {
        Ok(match self {
            Expr::Poly(p) => p.clone(),
            Expr::Hessian { h, .. } => determinant(h)?,
            Expr::Pow(e, k) => e.expand()?.pow(*k),
            Expr::Scale(c, e) => e.expand()?.scale(&e.field().from_rational(c)?),
            Expr::Mul(a, b) => a.expand()?.checked_mul(&b.expand()?)?,
            Expr::Add(a, b) => a.expand()?.checked_add(&b.expand()?)?,
            Expr::Sub(a, b) => a.expand()?.checked_sub(&b.expand()?)?,
        })
    }

    /// Exact value at a point with coordinates in the expression's field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        Ok(match self {
            Expr::Poly(p) => p.evaluate(point)?,
            Expr::Hessian { h, .. } => h.evaluate(point)?.determinant()?,
            Expr::Pow(e, k) => e.evaluate(point)?.pow(*k),
            Expr::Scale(c, e) => &e.field().from_rational(c)? * &e.evaluate(point)?,
            Expr::Mul(a, b) => &a.evaluate(point)? * &b.evaluate(point)?,
            Expr::Add(a, b) => &a.evaluate(point)? + &b.evaluate(point)?,
            Expr::Sub(a, b) => &a.evaluate(point)? - &b.evaluate(point)?,
        })
    }

    /// Reduces every leaf modulo `prime` for fast repeated evaluation.
    pub fn compile(&self, prime: u64) -> Result<CompiledExpr> {
        Ok(match self {
            Expr::Poly(p) => CompiledExpr::Poly(ModPoly::new(p, prime)?),
            Expr::Hessian { h, .. } => CompiledExpr::Det(h.compile_mod(prime)?),
            Expr::Pow(e, k) => CompiledExpr::Pow(Box::new(e.compile(prime)?), *k),
            Expr::Scale(c, e) => CompiledExpr::Scale(
                Fp::from_rational(c, prime)?.value(),
                Box::new(e.compile(prime)?),
            ),
            Expr::Mul(a, b) => CompiledExpr::Mul(Box::new(a.compile(prime)?), Box::new(b.compile(prime)?)),
            Expr::Add(a, b) => CompiledExpr::Add(Box::new(a.compile(prime)?), Box::new(b.compile(prime)?)),
            Expr::Sub(a, b) => CompiledExpr::Sub(Box::new(a.compile(prime)?), Box::new(b.compile(prime)?)),
        })
    }
}

#[derive(Debug, Clone)]
pub enum CompiledExpr {
    Poly(ModPoly),
    Det(ModMatrix),
    Pow(Box<CompiledExpr>, u32),
    Scale(u64, Box<CompiledExpr>),
    Mul(Box<CompiledExpr>, Box<CompiledExpr>),
    Add(Box<CompiledExpr>, Box<CompiledExpr>),
    Sub(Box<CompiledExpr>, Box<CompiledExpr>),
}

impl CompiledExpr {
    pub fn evaluate(&self, point: &[u64], p: u64) -> Result<u64> {
        Ok(match self {
            CompiledExpr::Poly(m) => m.evaluate(point)?,
            CompiledExpr::Det(m) => m.det_at(point)?,
            CompiledExpr::Pow(e, k) => pow_mod(e.evaluate(point, p)?, u64::from(*k), p),
            CompiledExpr::Scale(c, e) => mul_mod(*c, e.evaluate(point, p)?, p),
            CompiledExpr::Mul(a, b) => mul_mod(a.evaluate(point, p)?, b.evaluate(point, p)?, p),
            CompiledExpr::Add(a, b) => add_mod(a.evaluate(point, p)?, b.evaluate(point, p)?, p),
            CompiledExpr::Sub(a, b) => sub_mod(a.evaluate(point, p)?, b.evaluate(point, p)?, p),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    SchwartzZippel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    pub method: Method,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
    /// `log10((D / p)^t)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log10_failure_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured_constant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_constant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention_mismatch: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityReport {
    pub(crate) fn new(id: &str, method: Method, verdict: Verdict) -> Self {
        IdentityReport {
            id: id.to_string(),
            formula: None,
            method,
            verdict,
            prime: None,
            trials: None,
            degree_bound: None,
            log10_failure_bound: None,
            measured_constant: None,
            expected_constant: None,
            convention_mismatch: None,
            first_failure: None,
            detail: None,
        }
    }

    pub fn with_formula(mut self, formula: impl Into<String>) -> Self {
        self.formula = Some(formula.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

fn check_pair(lhs: &Expr, rhs: &Expr) -> Result<()> {
    lhs.check_ring()?;
    rhs.check_ring()?;
    if lhs.vars() != rhs.vars() {
        return Err(Error::VarSetMismatch);
    }
    if lhs.field() != rhs.field() {
        return Err(Error::FieldMismatch("identity sides".into()));
    }
    Ok(())
}

fn degree_for(lhs: &Expr, rhs: &Expr, cfg: &SampleConfig) -> Result<u64> {
    let degree = lhs.degree_bound().max(rhs.degree_bound());
    if degree >= cfg.prime {
        return Err(Error::DegreeTooLarge {
            degree,
            prime: cfg.prime,
        });
    }
    Ok(degree)
}

fn sampled_values(
    label: &str,
    exprs: &[&CompiledExpr],
    nvars: usize,
    cfg: &SampleConfig,
) -> Result<Vec<Vec<u64>>> {
    (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = cfg.trial_rng(label, t);
            let point = cfg.random_point(&mut rng, nvars);
            exprs.iter().map(|e| e.evaluate(&point, cfg.prime)).collect()
        })
        .collect()
}

/// `lhs = rhs` either by expanding both sides or by comparing values at
/// `cfg.trials` uniform F_p points.
pub fn verify_identity(
    id: &str,
    lhs: &Expr,
    rhs: &Expr,
    cfg: &SampleConfig,
    mode: Method,
) -> Result<IdentityReport> {
    check_pair(lhs, rhs)?;
    if mode == Method::Exact {
        let ok = lhs.expand()? == rhs.expand()?;
        return Ok(IdentityReport::new(id, Method::Exact, Verdict::from_bool(ok)));
    }
    cfg.validate()?;
    let degree = degree_for(lhs, rhs, cfg)?;
    let (l, r) = (lhs.compile(cfg.prime)?, rhs.compile(cfg.prime)?);
    let values = sampled_values(&format!("identity:{id}"), &[&l, &r], lhs.vars().len(), cfg)?;
    let first_failure = values.iter().position(|v| v[0] != v[1]);
    let mut report = IdentityReport::new(
        id,
        Method::SchwartzZippel,
        Verdict::from_bool(first_failure.is_none()),
    );
    report.prime = Some(cfg.prime);
    report.trials = Some(cfg.trials);
    report.degree_bound = Some(degree);
    report.log10_failure_bound = Some(log10_failure_bound(degree, cfg.prime, cfg.trials));
    report.first_failure = first_failure;
    Ok(report)
}

/// Number of small integer points tried when reconstructing a constant over Q.
const RATIONAL_ATTEMPTS: u64 = 64;

fn rational_ratio(lhs: &Expr, rhs: &Expr, cfg: &SampleConfig) -> Result<Option<BigRational>> {
    let n = lhs.vars().len();
    for attempt in 0..RATIONAL_ATTEMPTS {
        let mut rng = cfg.trial_rng("proportionality-q", attempt);
        let point: Vec<Scalar> = (0..n)
            .map(|_| Field::Rational.from_i64(rng.gen_range(-9..=9)))
            .collect();
        let r = rhs.evaluate(&point)?;
        if r.is_zero() {
            continue;
        }
        let l = lhs.evaluate(&point)?;
        let c = l.checked_div(&r).expect("nonzero divisor");
        return Ok(c.as_rational().cloned());
    }
    Ok(None)
}

/// `lhs = c * rhs` for a single constant `c`. Over Q the constant is
/// reconstructed exactly at a small integer point, then every F_p sample
/// must show the same ratio. `expected` is compared but never decides the
/// verdict; a difference sets `convention_mismatch`.
pub fn verify_proportionality(
    id: &str,
    lhs: &Expr,
    rhs: &Expr,
    cfg: &SampleConfig,
    expected: Option<&BigRational>,
) -> Result<IdentityReport> {
    check_pair(lhs, rhs)?;
    cfg.validate()?;
    let degree = degree_for(lhs, rhs, cfg)?;
    let p = cfg.prime;
    let over_q = lhs.field() == Field::Rational;
    let exact_c = if over_q { rational_ratio(lhs, rhs, cfg)? } else { None };
    let (l, r) = (lhs.compile(p)?, rhs.compile(p)?);
    let values = sampled_values(&format!("proportionality:{id}"), &[&l, &r], lhs.vars().len(), cfg)?;
    let ratios: Vec<Option<u64>> = values
        .iter()
        .map(|v| (v[1] != 0).then(|| mul_mod(v[0], inv_mod(v[1], p), p)))
        .collect();
    let reference = match &exact_c {
        Some(c) => Some(Fp::from_rational(c, p)?.value()),
        None => ratios.iter().flatten().next().copied(),
    };
    let first_failure = match reference {
        None => Some(0),
        Some(c) => values
            .iter()
            .zip(&ratios)
            .position(|(v, ratio)| match ratio {
                Some(q) => *q != c,
                None => v[0] != 0,
            }),
    };
    let mut report = IdentityReport::new(
        id,
        Method::SchwartzZippel,
        Verdict::from_bool(first_failure.is_none() && (exact_c.is_some() || !over_q)),
    );
    if over_q && exact_c.is_none() {
        report.detail = Some("the right-hand side vanished at every integer point tried".into());
    }
    let measured = match (&exact_c, reference) {
        (Some(c), _) => Some(c.to_string()),
        (None, Some(res)) => Some(format!("{res} (mod {p})")),
        (None, None) => None,
    };
    if let Some(e) = expected {
        report.expected_constant = Some(if over_q {
            e.to_string()
        } else {
            format!("{} (mod {p})", Fp::from_rational(e, p)?.value())
        });
        report.convention_mismatch = Some(match &exact_c {
            Some(c) => c != e,
            None => reference != Some(Fp::from_rational(e, p)?.value()),
        });
    }
    report.measured_constant = measured;
    report.prime = Some(p);
    report.trials = Some(cfg.trials);
    report.degree_bound = Some(degree);
    report.log10_failure_bound = Some(log10_failure_bound(degree, p, cfg.trials));
    report.first_failure = first_failure;
    Ok(report)
}

/// `df/da * df/db - df/dc * df/dd = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradientRelation {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

impl GradientRelation {
    pub fn new(a: &str, b: &str, c: &str, d: &str) -> Self {
        GradientRelation {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }
}

impl std::fmt::Display for GradientRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f_{} f_{} - f_{} f_{}", self.a, self.b, self.c, self.d)
    }
}

/// Exact check of every 2x2 relation among the partials of `f`.
pub fn check_gradient_relations(
    id: &str,
    f: &Poly,
    relations: &[GradientRelation],
) -> Result<IdentityReport> {
    let mut partials: HashMap<&str, Poly> = HashMap::new();
    for r in relations {
        for v in [&r.a, &r.b, &r.c, &r.d] {
            if !partials.contains_key(v.as_str()) {
                partials.insert(v, f.partial_derivative(v)?);
            }
        }
    }
    let failing: Vec<String> = relations
        .iter()
        .filter(|r| {
            let lhs = &partials[r.a.as_str()] * &partials[r.b.as_str()];
            let rhs = &partials[r.c.as_str()] * &partials[r.d.as_str()];
            lhs != rhs
        })
        .map(ToString::to_string)
        .collect();
    let report = IdentityReport::new(id, Method::Exact, Verdict::from_bool(failing.is_empty()));
    Ok(if failing.is_empty() {
        report.with_detail(format!("{} relations hold", relations.len()))
    } else {
        report.with_detail(format!("failing: {}", failing.join("; ")))
    })
}

/// Rational constant from an integer, for expected values.
pub fn rational(c: i64) -> BigRational {
    BigRational::from_integer(c.into())
}
