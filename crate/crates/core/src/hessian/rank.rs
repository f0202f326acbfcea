use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{log10_failure_bound, SampleConfig, PRIME_1_MOD_4};
use super::gradient::hessian_matrix;
use super::sample::HypersurfaceSampler;
use crate::error::{Error, Result};
use crate::linalg::{combinations, determinant, minor, PolyMatrix, Structure};
use crate::ring::{divides, Poly};

/// Default number of hypersurface points for on-hypersurface rank sampling.
pub const SAMPLE_POINTS: usize = 100;

/// Largest matrix side for which the exact minor search is attempted.
pub const EXACT_MAX_SIZE: usize = 8;

/// Largest entry degree for which the exact minor search is attempted.
pub const EXACT_MAX_ENTRY_DEGREE: u32 = 2;

/// Largest number of variables for which `hess_is_zero` expands the
/// determinant symbolically by default.
pub const EXACT_HESS_MAX_VARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Exact,
    Probabilistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HessMode {
    #[default]
    Auto,
    Exact,
    Probabilistic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HessVerdict {
    pub is_zero: bool,
    pub certificate: Certificate,
    /// `log10` of the Schwartz-Zippel bound; present for probabilistic zeros.
    pub log10_failure_bound: Option<f64>,
}

fn hess_degree_bound(f: &Poly) -> u64 {
    let d = u64::from(f.total_degree().unwrap_or(0));
    f.vars().len() as u64 * d.saturating_sub(2)
}

/// Whether `det H(f)` is the zero polynomial. `Auto` expands symbolically
/// for at most six variables and samples otherwise.
pub fn hess_is_zero(f: &Poly, cfg: &SampleConfig) -> Result<HessVerdict> {
    hess_is_zero_with(f, cfg, HessMode::Auto)
}

pub fn hess_is_zero_with(f: &Poly, cfg: &SampleConfig, mode: HessMode) -> Result<HessVerdict> {
    if f.is_homogeneous().is_none() {
        return Err(Error::NotHomogeneous);
    }
    let exact = match mode {
        HessMode::Exact => true,
        HessMode::Probabilistic => false,
        HessMode::Auto => f.vars().len() <= EXACT_HESS_MAX_VARS,
    };
    let h = hessian_matrix(f);
    if exact {
        return Ok(HessVerdict {
            is_zero: determinant(&h)?.is_zero(),
            certificate: Certificate::Exact,
            log10_failure_bound: None,
        });
    }
    let n = h.rows();
    let degree = hess_degree_bound(f);
    if degree >= cfg.prime {
        return Err(Error::DegreeTooLarge {
            degree,
            prime: cfg.prime,
        });
    }
    let compiled = h.compile_mod(cfg.prime)?;
    let full_rank = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = cfg.trial_rng("hess", t);
            compiled.rank_at(&cfg.random_point(&mut rng, n))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .any(|r| r == n);
    Ok(if full_rank {
        HessVerdict {
            is_zero: false,
            certificate: Certificate::Exact,
            log10_failure_bound: None,
        }
    } else {
        HessVerdict {
            is_zero: true,
            certificate: Certificate::Probabilistic,
            log10_failure_bound: Some(log10_failure_bound(degree, cfg.prime, cfg.trials)),
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEstimate {
    pub rank: usize,
    /// Bound on the chance that the true generic rank is larger.
    pub log10_failure_bound: f64,
}

/// Maximum rank over `cfg.trials` uniform F_p evaluations of `m`.
pub fn generic_rank(m: &PolyMatrix, cfg: &SampleConfig) -> Result<RankEstimate> {
    let compiled = m.compile_mod(cfg.prime)?;
    let nvars = m.vars().len();
    let rank = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = cfg.trial_rng("generic-rank", t);
            compiled.rank_at(&cfg.random_point(&mut rng, nvars))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let side = m.rows().min(m.cols()) as u64;
    let degree = side * u64::from(m.max_entry_degree());
    Ok(RankEstimate {
        rank,
        log10_failure_bound: log10_failure_bound(degree, cfg.prime, cfg.trials),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankModStrategy {
    #[default]
    Auto,
    Exact,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankModMethod {
    ExactDivisibility,
    OnHypersurfaceSampling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankModResult {
    pub rank: usize,
    pub method: RankModMethod,
    /// Sampling only certifies a lower bound.
    pub lower_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

/// Whether the exact minor search fits the size and degree budget.
pub fn exact_feasible(m: &PolyMatrix) -> bool {
    m.rows() <= EXACT_MAX_SIZE
        && m.cols() <= EXACT_MAX_SIZE
        && m.max_entry_degree() <= EXACT_MAX_ENTRY_DEGREE
}

/// Prime used for on-hypersurface sampling: `cfg.prime` when it is 1 mod 4,
/// otherwise [`PRIME_1_MOD_4`].
pub fn sampling_prime(cfg: &SampleConfig) -> u64 {
    if cfg.prime % 4 == 1 {
        cfg.prime
    } else {
        PRIME_1_MOD_4
    }
}

/// Largest order of a minor of `m` outside the ideal `(f)`; `f` is assumed
/// irreducible.
pub fn rank_mod_f(
    m: &PolyMatrix,
    f: &Poly,
    strategy: RankModStrategy,
    cfg: &SampleConfig,
) -> Result<RankModResult> {
    if m.vars() != f.vars() {
        return Err(Error::VarSetMismatch);
    }
    match strategy {
        RankModStrategy::Exact => {
            if !exact_feasible(m) {
                return Err(Error::ExactInfeasible(format!(
                    "{}x{} matrix with entry degree {}; the budget is {EXACT_MAX_SIZE}x{EXACT_MAX_SIZE} \
                     with degree <= {EXACT_MAX_ENTRY_DEGREE}",
                    m.rows(),
                    m.cols(),
                    m.max_entry_degree()
                )));
            }
            rank_mod_exact(m, f, cfg)
        }
        RankModStrategy::Sample => rank_mod_sampled(m, f, cfg, SAMPLE_POINTS),
        RankModStrategy::Auto if exact_feasible(m) => rank_mod_exact(m, f, cfg),
        RankModStrategy::Auto => rank_mod_sampled(m, f, cfg, SAMPLE_POINTS),
    }
}

/// Descends from the sampled generic rank, looking for a minor that `f`
/// does not divide.
pub fn rank_mod_exact(m: &PolyMatrix, f: &Poly, cfg: &SampleConfig) -> Result<RankModResult> {
    let symmetric = m.structure() == Structure::Symmetric;
    let start = generic_rank(m, cfg)?.rank;
    let mut rank = 0;
    for k in (1..=start).rev() {
        let rows = combinations(m.rows(), k);
        let cols = combinations(m.cols(), k);
        let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = rows
            .iter()
            .flat_map(|r| cols.iter().map(move |c| (r, c)))
            .filter(|(r, c)| !symmetric || r <= c)
            .collect();
        let witness = pairs.into_par_iter().find_any(|(r, c)| {
            minor(m, r, c)
                .and_then(|v| Ok(!v.is_zero() && divides(f, &v)?.is_none()))
                .unwrap_or(false)
        });
        if witness.is_some() {
            rank = k;
            break;
        }
    }
    Ok(RankModResult {
        rank,
        method: RankModMethod::ExactDivisibility,
        lower_bound: false,
        prime: None,
        points: None,
    })
}

/// Maximum rank of `m` over `points` smooth F_p points of `V(f)`.
pub fn rank_mod_sampled(
    m: &PolyMatrix,
    f: &Poly,
    cfg: &SampleConfig,
    points: usize,
) -> Result<RankModResult> {
    let prime = sampling_prime(cfg);
    let sampler = HypersurfaceSampler::new(f, prime)?;
    let compiled = m.compile_mod(prime)?;
    let rank = (0..points as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = cfg.trial_rng("rank-mod-f", t);
            compiled.rank_at(&sampler.smooth_point(&mut rng)?)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok(RankModResult {
        rank,
        method: RankModMethod::OnHypersurfaceSampling,
        lower_bound: true,
        prime: Some(prime),
        points: Some(points),
    })
}
