//! `vhess`: build hypersurfaces with vanishing hessian, profile them, and
//! run the identity checks and the acceptance suite.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage and parse errors.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vhess_core::families::{self, FamilyId, FamilySpec};
use vhess_core::hessian::{
    profile_with, HessMode, IdentityReport, ProfileOptions, RankModStrategy, SampleConfig,
    DEFAULT_PRIME, DEFAULT_TRIALS,
};
use vhess_core::suite::{self, IdentityParams, RunOptions, IDENTITY_IDS};

use input::Expectation;

#[derive(Debug, Parser)]
#[command(name = "vhess", version, about = "Hypersurfaces with vanishing hessian")]
struct Cli {
    /// Prime for Schwartz-Zippel checks.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Random trials per probabilistic check.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build family instances or list the catalog.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Compute the hessian profile of a polynomial.
    Profile(ProfileArgs),
    /// Run one named identity check, or all of them with `suite`.
    Verify(VerifyArgs),
    /// Run every acceptance criterion.
    Acceptance(AcceptanceArgs),
}

#[derive(Debug, Subcommand)]
enum FamilyCommand {
    /// Build one instance and print it as JSON.
    Build {
        id: FamilyId,
        #[command(flatten)]
        params: FamilyArgs,
        /// Output file.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Print the catalog of families and their parameters.
    List,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Inner polynomial, e.g. "z1^2 + z2^2 + z3^2".
    #[arg(long)]
    g: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RankModArg {
    Auto,
    Exact,
    Sample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HessArg {
    Auto,
    Exact,
    Probabilistic,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// A family id, a polynomial file (text or JSON), or inline text.
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    rank_mod: RankModArg,
    #[arg(long, value_enum, default_value = "auto")]
    hess: HessArg,
    /// Expected field, `key=value`; exit 1 on mismatch.
    #[arg(long = "expect", value_name = "KEY=VALUE")]
    expect: Vec<Expectation>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Identity id, or `suite` for every identity with default sizes.
    id: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    g: Option<String>,
}

#[derive(Debug, Args)]
struct AcceptanceArgs {
    /// Record wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    Check(String),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let cfg = SampleConfig::new(cli.prime, cli.trials, cli.seed).map_err(Failure::usage)?;
    let json = cli.json.as_deref();
    match &cli.command {
        Command::Family(FamilyCommand::List) => {
            let text = serde_json::to_string_pretty(&families::catalog()).expect("serializable");
            emit(&text, json)?;
            Ok(true)
        }
        Command::Family(FamilyCommand::Build { id, params, output }) => {
            let spec = family_spec(*id, params);
            let inst = families::build(&spec).map_err(Failure::usage)?;
            emit(&inst.to_json(), output.as_deref().or(json))?;
            Ok(true)
        }
        Command::Profile(args) => profile(args, &cfg, json),
        Command::Verify(args) => verify(args, &cfg, json),
        Command::Acceptance(args) => {
            let report = suite::run_acceptance(&cfg, RunOptions { timings: args.timings });
            match json {
                Some(path) => {
                    write_file(path, &report.to_json())?;
                    print_stdout(&report.summary());
                }
                None => {
                    print_stdout(&report.to_json());
                    eprintln!("{}", report.summary());
                }
            }
            Ok(report.passed())
        }
    }
}

fn family_spec(id: FamilyId, a: &FamilyArgs) -> FamilySpec {
    let mut spec = FamilySpec::default_for(id);
    let p = &mut spec.params;
    let set = |slot: &mut Option<usize>, v: Option<usize>| {
        if v.is_some() {
            *slot = v;
        }
    };
    set(&mut p.n, a.n);
    set(&mut p.big_n, a.big_n);
    set(&mut p.a, a.a);
    set(&mut p.b, a.b);
    set(&mut p.r, a.r);
    set(&mut p.m, a.m);
    if a.g.is_some() {
        p.g = a.g.clone();
    }
    spec
}

fn profile(args: &ProfileArgs, cfg: &SampleConfig, json: Option<&Path>) -> Outcome {
    let f = input::load_polynomial(&args.input).map_err(Failure::Usage)?;
    let opts = ProfileOptions {
        hess_mode: match args.hess {
            HessArg::Auto => HessMode::Auto,
            HessArg::Exact => HessMode::Exact,
            HessArg::Probabilistic => HessMode::Probabilistic,
        },
        rank_mod: match args.rank_mod {
            RankModArg::Auto => RankModStrategy::Auto,
            RankModArg::Exact => RankModStrategy::Exact,
            RankModArg::Sample => RankModStrategy::Sample,
        },
    };
    let p = profile_with(&f, cfg, opts).map_err(|e| match e {
        vhess_core::Error::NotHomogeneous | vhess_core::Error::Invalid(_) => Failure::usage(e),
        e => Failure::Check(e.to_string()),
    })?;
    emit(&serde_json::to_string_pretty(&p).expect("serializable"), json)?;
    let mut ok = true;
    for e in &args.expect {
        if let Some(msg) = e.mismatch(&p) {
            eprintln!("expectation failed: {msg}");
            ok = false;
        }
    }
    Ok(ok)
}

fn verify(args: &VerifyArgs, cfg: &SampleConfig, json: Option<&Path>) -> Outcome {
    let params = IdentityParams {
        n: args.n,
        m: args.m,
        g: args.g.clone(),
    };
    if args.id == "suite" {
        let mut reports = Vec::new();
        for id in IDENTITY_IDS {
            let r = suite::run_identity(id, &IdentityParams::default(), cfg)
                .map_err(|e| Failure::Check(format!("{id}: {e}")))?;
            reports.push(r);
        }
        emit(&serde_json::to_string_pretty(&reports).expect("serializable"), json)?;
        return Ok(reports.iter().all(IdentityReport::passed));
    }
    if !IDENTITY_IDS.contains(&args.id.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown identity `{}`; known: suite, {}",
            args.id,
            IDENTITY_IDS.join(", ")
        )));
    }
    let report = suite::run_identity(&args.id, &params, cfg).map_err(|e| match e {
        vhess_core::Error::Invalid(_) | vhess_core::Error::Syntax { .. } | vhess_core::Error::Cone(_) => {
            Failure::usage(e)
        }
        e => Failure::Check(e.to_string()),
    })?;
    emit(&serde_json::to_string_pretty(&report).expect("serializable"), json)?;
    Ok(report.passed())
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print_stdout(text);
            Ok(())
        }
    }
}

/// Prints a line, treating a closed pipe as success.
fn print_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{text}\n"))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
