//! The acceptance suite: every claim checked by the tool, grouped into
//! numbered criteria, plus named identity checks.

mod criteria;
pub mod identities;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use criteria::{sweep_instances, SWEEP_CHANGES, TITLES};
pub use identities::{run_identity, IdentityParams, IDENTITY_IDS};
pub use report::{CheckRecord, CriterionResult, RunReport};

use crate::hessian::SampleConfig;

/// Number of acceptance criteria.
pub const CRITERIA: u8 = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Record wall-clock times; reports are then no longer reproducible
    /// byte for byte.
    pub timings: bool,
}

/// Runs one criterion, `1..=16`.
pub fn run_criterion(number: u8, cfg: &SampleConfig, opts: RunOptions) -> CriterionResult {
    let ctx = criteria::Ctx { cfg: *cfg, opts };
    criteria::run_criterion(number, &ctx)
}

/// Runs every criterion; records are ordered by criterion number whatever
/// the completion order.
pub fn run_acceptance(cfg: &SampleConfig, opts: RunOptions) -> RunReport {
    let results: Vec<CriterionResult> = (1..=CRITERIA)
        .into_par_iter()
        .map(|n| run_criterion(n, cfg, opts))
        .collect();
    RunReport::new(*cfg, results)
}
