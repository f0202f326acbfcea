//! Reading polynomials and `--expect` clauses from the command line.

use std::path::Path;
use std::str::FromStr;

use vhess_core::families::{self, FamilyId, FamilyInstance, FamilySpec};
use vhess_core::hessian::HessianProfile;
use vhess_core::ring::{parse, text, PolyText};
use vhess_core::Poly;

/// Resolves a profile input: a family id (default parameters), a file
/// holding text, polynomial JSON or a family instance, or inline text.
pub fn load_polynomial(input: &str) -> Result<Poly, String> {
    if let Ok(id) = FamilyId::from_str(input) {
        return families::build(&FamilySpec::default_for(id))
            .map(|i| i.polynomial)
            .map_err(|e| e.to_string());
    }
    let path = Path::new(input);
    if path.is_file() {
        let body = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return parse_document(&body).map_err(|e| format!("{}: {e}", path.display()));
    }
    parse(input, None).map_err(|e| e.to_string())
}

fn parse_document(body: &str) -> Result<Poly, String> {
    let trimmed = body.trim_start();
    if !trimmed.starts_with('{') {
        return parse(body, None).map_err(|e| e.to_string());
    }
    let value: serde_json::Value = serde_json::from_str(body).map_err(|e| e.to_string())?;
    if value.get("polynomial").is_some() {
        let inst: FamilyInstance = serde_json::from_value(value).map_err(|e| e.to_string())?;
        return Ok(inst.polynomial);
    }
    if value.get("terms").is_some() {
        return text::from_json(body).map_err(|e| e.to_string());
    }
    let t: PolyText = serde_json::from_value(value).map_err(|e| e.to_string())?;
    Poly::try_from(&t).map_err(|e| e.to_string())
}

/// A `key=value` clause checked against a computed profile.
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub key: Field,
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    NVars,
    Degree,
    HessIsZero,
    IsCone,
    GenericRank,
    RankModF,
    DimPolarImage,
    DimDual,
    Codim,
}

impl Field {
    fn parse(key: &str) -> Option<Field> {
        Some(match key {
            "n_vars" => Field::NVars,
            "degree" => Field::Degree,
            "hess" | "hess_is_zero" => Field::HessIsZero,
            "cone" | "is_cone" => Field::IsCone,
            "generic_rank" => Field::GenericRank,
            "rank_mod" | "rank_mod_f" => Field::RankModF,
            "dim_polar_image" => Field::DimPolarImage,
            "dim_dual" => Field::DimDual,
            "codim" | "codim_dual_in_polar" => Field::Codim,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Field::NVars => "n_vars",
            Field::Degree => "degree",
            Field::HessIsZero => "hess_is_zero",
            Field::IsCone => "is_cone",
            Field::GenericRank => "generic_rank",
            Field::RankModF => "rank_mod_f",
            Field::DimPolarImage => "dim_polar_image",
            Field::DimDual => "dim_dual",
            Field::Codim => "codim_dual_in_polar",
        }
    }

    fn read(self, p: &HessianProfile) -> i64 {
        match self {
            Field::NVars => p.n_vars as i64,
            Field::Degree => i64::from(p.degree),
            Field::HessIsZero => i64::from(p.hess_is_zero),
            Field::IsCone => i64::from(p.is_cone),
            Field::GenericRank => p.generic_rank as i64,
            Field::RankModF => p.rank_mod_f as i64,
            Field::DimPolarImage => p.dim_polar_image,
            Field::DimDual => p.dim_dual,
            Field::Codim => p.codim_dual_in_polar,
        }
    }
}

impl FromStr for Expectation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
        let key = Field::parse(k.trim()).ok_or_else(|| format!("unknown profile field `{k}`"))?;
        let value = match v.trim() {
            "true" => 1,
            "false" => 0,
            other => other
                .parse()
                .map_err(|_| format!("`{other}` is not an integer or boolean"))?,
        };
        Ok(Expectation { key, value })
    }
}

impl Expectation {
    /// Describes the disagreement, if any.
    pub fn mismatch(&self, p: &HessianProfile) -> Option<String> {
        let got = self.key.read(p);
        (got != self.value).then(|| format!("{} is {got}, expected {}", self.key.name(), self.value))
    }
}
