//! Hessian matrices, rank profiles, cone detection, and exact or
//! Schwartz-Zippel identity checks.

pub mod config;
mod gradient;
mod identity;
mod profile;
mod rank;
mod sample;
mod transform;
pub mod univariate;

pub use config::{SampleConfig, DEFAULT_PRIME, DEFAULT_TRIALS, PRIME_1_MOD_4};
pub use gradient::{hessian_matrix, is_cone, polar_gradient, ConeReport};
pub use identity::{
    check_gradient_relations, rational, verify_identity, verify_proportionality, CompiledExpr,
    Expr, GradientRelation, IdentityReport, Method, Verdict,
};
pub use profile::{profile, profile_with, HessianProfile, ProfileOptions};
pub use rank::{
    exact_feasible, generic_rank, hess_is_zero, hess_is_zero_with, rank_mod_exact, rank_mod_f,
    rank_mod_sampled, sampling_prime, Certificate, HessMode, HessVerdict, RankEstimate,
    RankModMethod, RankModResult, RankModStrategy, SAMPLE_POINTS,
};
pub use sample::{sample_point_on_hypersurface, HypersurfaceSampler, LINE_BUDGET};
pub use transform::LinearChange;
