//! Batch driver: compute both sides of the rank comparison, run the
//! identity suites, probe operator norms. All commands print a JSON report
//! to stdout (`--pretty` adds a human table to stderr).
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage error, 3 non-stabilization.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cychom_core::complex::ComplexError;
use cychom_core::group::GroupModel;
use cychom_core::num::Q;
use cychom_core::pipeline;
use cychom_core::report::Report;
use cychom_core::suites;

#[derive(Parser)]
#[command(name = "cychom", version, about = "exact cyclic/bar chain workbench")]
struct Cli {
    /// Also print a human-readable table to stderr.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class-by-class cyclic dimensions of a finite group ring.
    ComputeHp(ComputeHp),
    /// Radius-stabilized class homology from Rips coinvariants.
    GroupHomology(GroupHomology),
    /// Run a named identity suite with a seed.
    Verify(Verify),
    /// Sample an operator-norm ratio and report its supremum.
    Probe(Probe),
}

#[derive(Args)]
struct ComputeHp {
    /// Backend name (`z2`, `z2xz2`, `s3`, `d4`, or a JSON table path).
    #[arg(long)]
    group: String,
    /// Even truncation level of the total complex.
    #[arg(long, default_value_t = 6)]
    truncation: i32,
    /// Column budget above which levels switch to the contraction route.
    #[arg(long, default_value_t = 3000)]
    rank_budget: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct GroupHomology {
    /// Backend name (`Zn:k`, `free:k`, `dinf`, finite names, or a path).
    #[arg(long)]
    group: String,
    /// Largest radius tried during stabilization.
    #[arg(long, default_value_t = 4)]
    radius: u32,
    /// Restrict to one torsion class representative (parsed in the
    /// backend's alphabet; defaults to all).
    #[arg(long)]
    class: Option<String>,
    /// Attach the boundary matrices of the stabilized complex to the report
    /// in coordinate text form.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct Verify {
    /// One of: bar, cyclic, cartan, tilting, hyperbolic, norms, all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count per check.
    #[arg(long, default_value_t = 60)]
    count: usize,
}

#[derive(Args)]
struct Probe {
    /// One of: differential, retraction-step, cone-block-group,
    /// cone-block-point, axis-cochain.
    #[arg(long)]
    operator: String,
    /// Growth base, written as `p/q` or an integer; must exceed 1.
    #[arg(long, default_value = "2")]
    lambda: String,
    /// Degree damping base, same format.
    #[arg(long, default_value = "4")]
    bignorm: String,
    #[arg(short = 'k', default_value_t = 1)]
    k: u32,
    #[arg(short = 'l', default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn parse_q(s: &str) -> Result<Q, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i64 = n.trim().parse().map_err(|_| format!("bad rational {s}"))?;
    let d: i64 = d.trim().parse().map_err(|_| format!("bad rational {s}"))?;
    if d == 0 {
        return Err(format!("zero denominator in {s}"));
    }
    Ok(Q::new(n.into(), d.into()))
}

fn emit(report: &Report, pretty: bool) {
    println!("{}", serde_json::to_string_pretty(report).expect("serialize"));
    if pretty {
        eprint!("{}", report.pretty());
    }
}

fn run() -> Result<ExitCode, (u8, String)> {
    let cli = Cli::parse();
    match cli.command {
        Command::ComputeHp(args) => {
            let model = GroupModel::by_name(&args.group).map_err(|e| (2, e.to_string()))?;
            if !model.is_finite() {
                return Err((2, "compute-hp needs a finite group backend".into()));
            }
            if args.truncation < 4 || args.truncation % 2 != 0 {
                return Err((2, "truncation must be an even level >= 4".into()));
            }
            let classes =
                pipeline::hp_finite(&model, args.truncation, args.rank_budget, args.seed)
                    .map_err(|e| match e {
                        ComplexError::NonStabilization(m) => (3, m),
                        other => (1, other.to_string()),
                    })?;
            let mut report = Report::from_hp(&args.group, &classes);
            report.seed = Some(args.seed);
            emit(&report, cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::GroupHomology(args) => {
            let model = GroupModel::by_name(&args.group).map_err(|e| (2, e.to_string()))?;
            let classes = match &args.class {
                Some(rep) => {
                    let v = model.parse_elem(rep).map_err(|e| (2, e.to_string()))?;
                    if !model.is_torsion(&v) {
                        return Err((2, format!("{rep} has infinite order")));
                    }
                    vec![pipeline::group_homology_class(&model, &v, 1, args.radius)
                        .map_err(classify)?]
                }
                None => pipeline::group_homology(&model, 1, args.radius).map_err(classify)?,
            };
            let mut report = Report::from_group_homology(&args.group, &classes);
            if args.dump {
                let v = match &args.class {
                    Some(rep) => model.parse_elem(rep).map_err(|e| (2, e.to_string()))?,
                    None => model.identity(),
                };
                report.boundary_dump =
                    Some(pipeline::boundary_dump(&model, &v, args.radius).map_err(classify)?);
            }
            emit(&report, cli.pretty);
            let ok = classes.iter().all(|c| c.crosscheck != Some(false));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify(args) => {
            let Some(entries) = suites::run_suite(&args.suite, args.seed, args.count) else {
                return Err((2, format!("unknown suite '{}'", args.suite)));
            };
            let passed = entries.iter().all(|e| e.passed);
            let report = Report {
                group: String::new(),
                command: format!("verify {}", args.suite),
                seed: Some(args.seed),
                classes: vec![],
                totals: cychom_core::report::Totals { even: 0, odd: 0 },
                suite: entries,
                boundary_dump: None,
            };
            emit(&report, cli.pretty);
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Probe(args) => {
            let lambda = parse_q(&args.lambda).map_err(|m| (2, m))?;
            let bignorm = parse_q(&args.bignorm).map_err(|m| (2, m))?;
            let one = Q::from_integer(1.into());
            if lambda <= one || bignorm <= one {
                return Err((2, "lambda and bignorm must exceed 1".into()));
            }
            let samples = args.samples.max(10);
            let probe = match args.operator.as_str() {
                "differential" => suites::probe_total_differential(
                    args.seed, samples, lambda, bignorm, args.k,
                ),
                "retraction-step" => suites::probe_retraction_step(args.seed, samples),
                "cone-block-group" => suites::probe_cone_blocks(args.seed, samples).0,
                "cone-block-point" => suites::probe_cone_blocks(args.seed, samples).1,
                "axis-cochain" => suites::probe_axis_cochain(args.seed, samples),
                other => return Err((2, format!("unknown operator '{other}'"))),
            };
            let json = serde_json::json!({
                "command": "probe",
                "operator": probe.small.operator,
                "params": probe.small.params,
                "seed": args.seed,
                "samples": {
                    "small": probe.small.samples,
                    "large": probe.large.samples,
                },
                "observed_sup": {
                    "small": probe.small.observed_sup,
                    "large": probe.large.observed_sup,
                },
                "witness": probe.large.witness,
                "bounded": probe.bounded,
            });
            println!("{}", serde_json::to_string_pretty(&json).expect("serialize"));
            if cli.pretty {
                eprintln!(
                    "probe {}: sup {} -> {} ({})",
                    probe.small.operator,
                    probe.small.observed_sup,
                    probe.large.observed_sup,
                    if probe.bounded { "bounded" } else { "UNBOUNDED" }
                );
            }
            Ok(if probe.bounded { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn classify(e: ComplexError) -> (u8, String) {
    match e {
        ComplexError::NonStabilization(m) => (3, m),
        other => (1, other.to_string()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
