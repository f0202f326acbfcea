use serde::{Deserialize, Serialize};

use super::config::SampleConfig;
use super::gradient::{hessian_matrix, is_cone};
use super::rank::{
    generic_rank, hess_is_zero_with, rank_mod_f, Certificate, HessMode, RankModMethod,
    RankModStrategy,
};
use crate::error::{Error, Result};
use crate::ring::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProfileOptions {
    pub hess_mode: HessMode,
    pub rank_mod: RankModStrategy,
}

/// Ranks and dimensions attached to a hypersurface `V(f)` in `P^N`.
///
/// `dim_polar_image = generic_rank - 1`, `dim_dual = rank_mod_f - 2` and
/// `codim_dual_in_polar` is their difference. The dual-dimension reading
/// assumes `f` reduced and irreducible, which is not verified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessianProfile {
    pub n_vars: usize,
    pub degree: u32,
    pub hess_is_zero: bool,
    pub hess_certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hess_log10_failure_bound: Option<f64>,
    pub generic_rank: usize,
    pub generic_rank_log10_failure_bound: f64,
    pub rank_mod_f: usize,
    pub rank_mod_method: RankModMethod,
    pub rank_mod_is_lower_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_mod_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_mod_points: Option<usize>,
    pub dim_polar_image: i64,
    pub dim_dual: i64,
    pub codim_dual_in_polar: i64,
    pub is_cone: bool,
    pub irreducibility_asserted: bool,
    pub config: SampleConfig,
}

impl HessianProfile {
    /// Projective dimension `N` of the ambient space.
    pub fn ambient_dim(&self) -> i64 {
        self.n_vars as i64 - 1
    }

    /// Violations of `dim X* <= dim Z <= N`, and of the strict chain
    /// `dim X* < dim Z < N` when the hessian vanishes.
    pub fn invariant_violations(&self) -> Vec<String> {
        let (dual, polar, n) = (self.dim_dual, self.dim_polar_image, self.ambient_dim());
        let mut out = Vec::new();
        if self.rank_mod_f > self.generic_rank {
            out.push(format!(
                "rank mod f {} exceeds generic rank {}",
                self.rank_mod_f, self.generic_rank
            ));
        }
        if dual > polar || polar > n {
            out.push(format!("expected dim X* <= dim Z <= N, got {dual}, {polar}, {n}"));
        }
        if self.hess_is_zero && !(dual < polar && polar < n) {
            out.push(format!("expected dim X* < dim Z < N, got {dual}, {polar}, {n}"));
        }
        out
    }

    /// The fields that must agree between projectively equivalent inputs.
    pub fn numeric_fields(&self) -> [i64; 9] {
        [
            self.n_vars as i64,
            i64::from(self.degree),
            i64::from(self.hess_is_zero),
            self.generic_rank as i64,
            self.rank_mod_f as i64,
            self.dim_polar_image,
            self.dim_dual,
            self.codim_dual_in_polar,
            i64::from(self.is_cone),
        ]
    }
}

pub fn profile(f: &Poly, cfg: &SampleConfig) -> Result<HessianProfile> {
    profile_with(f, cfg, ProfileOptions::default())
}

pub fn profile_with(f: &Poly, cfg: &SampleConfig, opts: ProfileOptions) -> Result<HessianProfile> {
    cfg.validate()?;
    let degree = f.is_homogeneous().ok_or(Error::NotHomogeneous)?;
    if degree < 2 {
        return Err(Error::Invalid(format!("profiles need degree >= 2, got {degree}")));
    }
    let h = hessian_matrix(f);
    let hess = hess_is_zero_with(f, cfg, opts.hess_mode)?;
    let rank = generic_rank(&h, cfg)?;
    let rank_mod = rank_mod_f(&h, f, opts.rank_mod, cfg)?;
    let cone = is_cone(f)?;
    let dim_polar_image = rank.rank as i64 - 1;
    let dim_dual = rank_mod.rank as i64 - 2;
    Ok(HessianProfile {
        n_vars: f.vars().len(),
        degree,
        hess_is_zero: hess.is_zero,
        hess_certificate: hess.certificate,
        hess_log10_failure_bound: hess.log10_failure_bound,
        generic_rank: rank.rank,
        generic_rank_log10_failure_bound: rank.log10_failure_bound,
        rank_mod_f: rank_mod.rank,
        rank_mod_method: rank_mod.method,
        rank_mod_is_lower_bound: rank_mod.lower_bound,
        rank_mod_prime: rank_mod.prime,
        rank_mod_points: rank_mod.points,
        dim_polar_image,
        dim_dual,
        codim_dual_in_polar: dim_polar_image - dim_dual,
        is_cone: cone.is_cone,
        irreducibility_asserted: true,
        config: *cfg,
    })
}
