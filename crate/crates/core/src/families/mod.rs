//! Named generators for hypersurfaces with known hessian behaviour, each
//! paired with the profile fields and identity checks it is expected to
//! satisfy.

mod generators;
pub mod matrices;
#[cfg(test)]
mod tests;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use generators::*;

use crate::error::{Error, Result};
use crate::hessian::GradientRelation;
use crate::ring::text::as_text;
use crate::ring::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Perazzo,
    PerazzoExt,
    Pencil,
    P5Example,
    P7Fermat,
    DualCayley,
    ScrollDual,
    ScrollDualClosed,
    GenericDet,
    SymmetricDet,
    PfaffianForm,
    DetSlice,
    SymSlice,
    PfSlice,
    CauchySchwartz,
}

impl FamilyId {
    pub const ALL: [FamilyId; 15] = [
        FamilyId::Perazzo,
        FamilyId::PerazzoExt,
        FamilyId::Pencil,
        FamilyId::P5Example,
        FamilyId::P7Fermat,
        FamilyId::DualCayley,
        FamilyId::ScrollDual,
        FamilyId::ScrollDualClosed,
        FamilyId::GenericDet,
        FamilyId::SymmetricDet,
        FamilyId::PfaffianForm,
        FamilyId::DetSlice,
        FamilyId::SymSlice,
        FamilyId::PfSlice,
        FamilyId::CauchySchwartz,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Perazzo => "perazzo",
            FamilyId::PerazzoExt => "perazzo-ext",
            FamilyId::Pencil => "pencil",
            FamilyId::P5Example => "p5-example",
            FamilyId::P7Fermat => "p7-fermat",
            FamilyId::DualCayley => "dual-cayley",
            FamilyId::ScrollDual => "scroll-dual",
            FamilyId::ScrollDualClosed => "scroll-dual-closed",
            FamilyId::GenericDet => "generic-det",
            FamilyId::SymmetricDet => "symmetric-det",
            FamilyId::PfaffianForm => "pfaffian-form",
            FamilyId::DetSlice => "det-slice",
            FamilyId::SymSlice => "sym-slice",
            FamilyId::PfSlice => "pf-slice",
            FamilyId::CauchySchwartz => "cauchy-schwartz",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family `{s}`")))
    }
}

/// Integer parameters and the optional inner polynomial of a family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Inner polynomial in text form. Its variables are ordered by name,
    /// numeric suffixes compared as numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: FamilyId,
    #[serde(default)]
    pub params: FamilyParams,
}

impl FamilySpec {
    pub fn new(id: FamilyId) -> Self {
        FamilySpec {
            id,
            params: FamilyParams::default(),
        }
    }

    /// The smallest instance of each family that the acceptance suite uses.
    pub fn default_for(id: FamilyId) -> Self {
        let mut p = FamilyParams::default();
        match id {
            FamilyId::PerazzoExt => p.big_n = Some(6),
            FamilyId::Pencil => p.g = Some("z1^2 + z2^2 + z3^2".into()),
            FamilyId::DualCayley => {
                p.g = Some("z0*z2 - z1^2".into());
                p.r = Some(2);
                p.big_n = Some(4);
            }
            FamilyId::ScrollDual => {
                p.a = Some(1);
                p.b = Some(2);
            }
            FamilyId::ScrollDualClosed => p.b = Some(2),
            FamilyId::GenericDet
            | FamilyId::SymmetricDet
            | FamilyId::DetSlice
            | FamilyId::SymSlice => p.n = Some(2),
            FamilyId::PfaffianForm | FamilyId::PfSlice => p.m = Some(2),
            FamilyId::CauchySchwartz => p.n = Some(1),
            FamilyId::Perazzo | FamilyId::P5Example | FamilyId::P7Fermat => {}
        }
        FamilySpec { id, params: p }
    }
}

/// Which variables play which role in a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableBlock {
    pub role: String,
    pub vars: Vec<String>,
}

impl VariableBlock {
    pub fn new(role: &str, vars: impl IntoIterator<Item = String>) -> Self {
        VariableBlock {
            role: role.into(),
            vars: vars.into_iter().collect(),
        }
    }
}

/// Profile fields an instance is expected to show; unset fields carry no
/// prediction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedProfile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hess_is_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_cone: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generic_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_mod_f: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_polar_image: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_dual: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim_dual_in_polar: Option<i64>,
}

impl ExpectedProfile {
    pub fn hess(is_zero: bool) -> Self {
        ExpectedProfile {
            hess_is_zero: Some(is_zero),
            ..Default::default()
        }
    }

    pub fn not_cone(mut self) -> Self {
        self.is_cone = Some(false);
        self
    }

    /// Sets both ranks and the dimensions they determine.
    pub fn ranks(mut self, generic: usize, modulo_f: usize) -> Self {
        self.generic_rank = Some(generic);
        self.rank_mod_f = Some(modulo_f);
        self.dim_polar_image = Some(generic as i64 - 1);
        self.dim_dual = Some(modulo_f as i64 - 2);
        self.codim_dual_in_polar = Some(generic as i64 - modulo_f as i64 + 1);
        self
    }

    pub fn codim(mut self, codim: i64) -> Self {
        self.codim_dual_in_polar = Some(codim);
        self
    }

    /// `codim = dim Z - dim X*` whenever all three are present.
    pub fn is_consistent(&self) -> bool {
        match (self.dim_polar_image, self.dim_dual, self.codim_dual_in_polar) {
            (Some(z), Some(x), Some(c)) => z - x == c,
            _ => true,
        }
    }

    pub fn is_empty(&self) -> bool {
        self == &ExpectedProfile::default()
    }
}

/// `hess(f) = c * f^exponent`. `constant` is the predicted value of `c`;
/// `observed_constant` is a value measured once by an independent oracle
/// and only reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proportionality {
    pub exponent: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed_constant: Option<i64>,
    pub formula: String,
}

/// Identity-check identifiers attached to instances.
pub mod checks {
    pub const HESS_ZERO: &str = "hess-zero";
    pub const HESS_NONZERO: &str = "hess-nonzero";
    pub const NOT_CONE: &str = "not-cone";
    pub const GRADIENT_RELATIONS: &str = "gradient-relations";
    pub const EULER: &str = "euler";
    pub const SEGRE_CONSTANT: &str = "segre-constant";
    pub const HESS_PROPORTIONAL: &str = "hess-proportional";
    pub const HESS_DIVISIBILITY: &str = "hess-divisibility";
    pub const PENCIL_REDUCTION: &str = "pencil-reduction";
    pub const CLOSED_FORM: &str = "closed-form";
    pub const LAGRANGE: &str = "lagrange";
    pub const PF_SQUARE: &str = "pf-square";
}

/// A generated polynomial with its metadata and expectations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub description: String,
    #[serde(with = "as_text")]
    pub polynomial: Poly,
    pub degree: u32,
    pub blocks: Vec<VariableBlock>,
    /// Fields predicted by the construction itself.
    pub expected: ExpectedProfile,
    /// Fields fixed by independent rank oracles rather than by theory.
    #[serde(default, skip_serializing_if = "ExpectedProfile::is_empty")]
    pub reference: ExpectedProfile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportionality: Option<Proportionality>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gradient_relations: Vec<GradientRelation>,
    pub checks: Vec<String>,
}

impl FamilyInstance {
    pub fn n_vars(&self) -> usize {
        self.polynomial.vars().len()
    }

    pub fn has_check(&self, id: &str) -> bool {
        self.checks.iter().any(|c| c == id)
    }

    pub fn block(&self, role: &str) -> Option<&VariableBlock> {
        self.blocks.iter().find(|b| b.role == role)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn need(value: Option<usize>, name: &str, id: FamilyId) -> Result<usize> {
    value.ok_or_else(|| Error::Invalid(format!("family `{id}` needs parameter `{name}`")))
}

fn at_least(value: usize, min: usize, name: &str, id: FamilyId) -> Result<usize> {
    if value < min {
        return Err(Error::Invalid(format!(
            "family `{id}` needs {name} >= {min}, got {value}"
        )));
    }
    Ok(value)
}

/// Builds the instance described by `spec`, validating its parameters.
pub fn build(spec: &FamilySpec) -> Result<FamilyInstance> {
    let p = &spec.params;
    let id = spec.id;
    let inner = || -> Result<Poly> {
        let text = p
            .g
            .as_deref()
            .ok_or_else(|| Error::Invalid(format!("family `{id}` needs an inner polynomial `g`")))?;
        parse_inner(text)
    };
    match id {
        FamilyId::Perazzo => Ok(perazzo()),
        FamilyId::PerazzoExt => perazzo_ext(at_least(need(p.big_n, "N", id)?, 5, "N", id)?),
        FamilyId::Pencil => pencil(&inner()?),
        FamilyId::P5Example => Ok(p5_example()),
        FamilyId::P7Fermat => Ok(p7_fermat()),
        FamilyId::DualCayley => {
            let r = at_least(need(p.r, "r", id)?, 1, "r", id)?;
            let big_n = need(p.big_n, "N", id)?;
            dual_cayley(&inner()?, r, big_n)
        }
        FamilyId::ScrollDual => {
            let a = at_least(need(p.a, "a", id)?, 1, "a", id)?;
            let b = at_least(need(p.b, "b", id)?, a, "b", id)?;
            scroll_dual(a, b)
        }
        FamilyId::ScrollDualClosed => {
            scroll_dual_closed(at_least(need(p.b, "b", id)?, 1, "b", id)?)
        }
        FamilyId::GenericDet => generic_det(at_least(need(p.n, "n", id)?, 2, "n", id)?),
        FamilyId::SymmetricDet => symmetric_det(at_least(need(p.n, "n", id)?, 2, "n", id)?),
        FamilyId::PfaffianForm => pfaffian_form(at_least(need(p.m, "m", id)?, 2, "m", id)?),
        FamilyId::DetSlice => det_slice(at_least(need(p.n, "n", id)?, 2, "n", id)?),
        FamilyId::SymSlice => sym_slice(at_least(need(p.n, "n", id)?, 2, "n", id)?),
        FamilyId::PfSlice => pf_slice(at_least(need(p.m, "m", id)?, 2, "m", id)?),
        FamilyId::CauchySchwartz => {
            cauchy_schwartz(at_least(need(p.n, "n", id)?, 1, "n", id)?)
        }
    }
}

/// One entry of the family catalog manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: FamilyId,
    pub params: Vec<ParamSchema>,
    pub formula: String,
    pub expected_fields: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSchema {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<usize>,
}

fn int(name: &str, min: usize) -> ParamSchema {
    ParamSchema {
        name: name.into(),
        kind: "integer".into(),
        min: Some(min),
    }
}

fn poly_param() -> ParamSchema {
    ParamSchema {
        name: "g".into(),
        kind: "polynomial".into(),
        min: None,
    }
}

fn fields(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The family catalog, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    use FamilyId::*;
    let entry = |id, params, formula: &str, expected: &[&str]| CatalogEntry {
        id,
        params,
        formula: formula.into(),
        expected_fields: fields(expected),
    };
    vec![
        entry(Perazzo, vec![], "x0*x3^2 + x1*x3*x4 + x2*x4^2", &["hess_is_zero", "is_cone"]),
        entry(PerazzoExt, vec![int("N", 5)], "x0*x3^2 + x1*x3*x4 + x2*x4^2 + sum_{i=5}^N xi^3", &["hess_is_zero", "is_cone"]),
        entry(Pencil, vec![poly_param()], "g(u*x1 - v*y1, ..., u*xn - v*yn)", &["hess_is_zero", "is_cone", "generic_rank"]),
        entry(P5Example, vec![], "(u*x1 - v*y1)^2 + (u*x2 - v*y2)^2 + u^4", &["hess_is_zero", "is_cone", "generic_rank"]),
        entry(P7Fermat, vec![], "sum_{i=1}^3 (u*xi - v*yi)^2", &["hess_is_zero", "is_cone", "generic_rank", "rank_mod_f", "codim_dual_in_polar"]),
        entry(DualCayley, vec![poly_param(), int("r", 1), int("N", 2)], "g(B'_0, ..., B'_{N-r}), B'_j = det[A' column j | B']", &["hess_is_zero"]),
        entry(ScrollDual, vec![int("a", 1), int("b", 1)], "Res_{s,t}(sum wi s^(a-i) t^i, sum zj s^(b-j) t^j)", &[]),
        entry(ScrollDualClosed, vec![int("b", 1)], "sum_{i=0}^b (-w1)^(b-i) w0^i zi", &["hess_is_zero", "is_cone"]),
        entry(GenericDet, vec![int("n", 2)], "det of the generic (n+1)x(n+1) matrix; hess = (-1)^(n(n-1)/2) n f^((n+1)(n-1))", &["hess_is_zero", "generic_rank", "rank_mod_f", "codim_dual_in_polar"]),
        entry(SymmetricDet, vec![int("n", 2)], "det of the generic symmetric (n+1)x(n+1) matrix; hess = (-1)^(n(n-1)/2) 2^((n+1)n/2) n g^((n+2)(n-1)/2)", &["hess_is_zero"]),
        entry(PfaffianForm, vec![int("m", 2)], "Pfaffian of the generic skew (2m+2)x(2m+2) matrix; hess = (-1)^m m Pf^((2m+1)(m-1))", &["hess_is_zero"]),
        entry(DetSlice, vec![int("n", 2)], "generic determinant with x{n}_{n} = 0", &["hess_is_zero", "codim_dual_in_polar"]),
        entry(SymSlice, vec![int("n", 2)], "symmetric determinant with s{n}_{n} = 0", &["hess_is_zero", "codim_dual_in_polar"]),
        entry(PfSlice, vec![int("m", 2)], "Pfaffian with a{2m}_{2m+1} = 0", &["hess_is_zero", "codim_dual_in_polar"]),
        entry(CauchySchwartz, vec![int("n", 1)], "|a|^2 |b|^2 - (a.b)^2 with a, b of length n+2", &["hess_is_zero"]),
    ]
}
