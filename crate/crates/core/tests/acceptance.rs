//! Runs every acceptance criterion with the default configuration and
//! prints one line per criterion. Beyond the suite's own verdicts, a few
//! measured values are pinned against independently computed oracles.

use std::process::ExitCode;

use serde_json::{json, Value};
use vhess_core::hessian::SampleConfig;
use vhess_core::suite::{run_acceptance, CheckRecord, RunOptions, RunReport};

/// `(check id, measured key, value)` fixed by oracles outside this crate.
/// `(check id, measured key, value)` fixed by oracles outside this crate.
fn pinned() -> Vec<(&'static str, &'static str, Value)> {
    vec![
        ("p7-fermat/generic-rank", "generic_rank", json!(6)),
        ("p7-fermat/rank-mod-f", "rank_mod_f", json!(5)),
        ("p7-fermat/codim", "codim_dual_in_polar", json!(2)),
        ("segre-alpha/n2", "constant", json!("-2")),
        ("segre-alpha/n3", "constant", json!("-3")),
        ("segre-beta/n2", "constant", json!("-16")),
        ("segre-beta/n3", "constant", json!("-192")),
        ("segre-gamma/m2", "constant", json!("2")),
        ("cauchy-schwartz/proportional", "constant", json!("192")),
        ("scroll-dual/closed-form-b2", "constant", json!("+1")),
        ("det-slice/profile", "generic_rank", json!(7)),
        ("det-slice/profile", "rank_mod_f", json!(6)),
        ("sym-slice/profile", "generic_rank", json!(4)),
        ("sym-slice/profile", "rank_mod_f", json!(4)),
        ("pf-slice/profile", "generic_rank", json!(13)),
        ("pf-slice/profile", "rank_mod_f", json!(10)),
    ]
}

fn find<'a>(report: &'a RunReport, id: &str) -> Option<&'a CheckRecord> {
    report.criteria.iter().flat_map(|c| &c.checks).find(|c| c.id == id)
}

fn main() -> ExitCode {
    let report = run_acceptance(&SampleConfig::default(), RunOptions::default());
    let mut ok = report.passed();
    for c in &report.criteria {
        println!("{}", c.summary_line());
    }
    for (id, key, want) in pinned() {
        let got = find(&report, id).and_then(|c| c.measured.get(key));
        if got != Some(&want) {
            println!("pinned value mismatch: {id} {key} = {got:?}, oracle {want}");
            ok = false;
        }
    }
    let again: RunReport = serde_json::from_str(&report.to_json()).expect("report parses");
    if again != report {
        println!("report does not round-trip through JSON");
        ok = false;
    }
    let passed = report.criteria.iter().filter(|c| c.passed()).count();
    println!("acceptance: {passed}/{} criteria passed", report.criteria.len());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
