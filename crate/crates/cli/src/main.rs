// SPDX-License-Identifier: Apache-2.0

//! `qsep` — run the oracle algorithms, sweep oracle populations, and check
//! states for separability, emitting machine-readable reports.
//!
//! Every report embeds the tool version, the fully resolved configuration
//! and the seed, so a run can be replayed exactly. Exit codes: 0 on
//! success/verified, 1 when a verification finds a counterexample or period
//! recovery exhausts its rounds, 2 on usage errors.

mod output;
mod resolve;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qsep_core::algorithms::{
    grover_first_step_state, run_dj, run_grover, run_simon,
};
use qsep_core::classical::{classical_dj_exact, classical_dj_linear, verify_exact_lower_bound};
use qsep_core::oracle::{enumerate_linear_family, enumerate_promise_functions};
use qsep_core::propositions::{
    verify_dj_linear_no_entanglement, verify_grover_entanglement, verify_linear_family_classes,
    verify_phase_conservation, verify_separable_maximality, verify_simon_entanglement,
    VerificationReport,
};
use qsep_core::rng::seeded;
use qsep_core::separability::{factor_state, DEFAULT_TOL};
use qsep_core::state::read_state_text;
use qsep_core::{Bits, BooleanOracle, VectorOracle};

use output::{Format, Outcome, Payload, ResolvedConfig};
use resolve::{resolve_oracle, OracleEcho};

/// Seed used whenever none is given, so default runs are reproducible.
const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(
    name = "qsep",
    version,
    about = "Oracle-algorithm simulator and separability analyzer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format written to stdout or --out.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Constant-versus-balanced decision runs.
    Dj {
        #[command(subcommand)]
        action: DjAction,
    },
    /// Period recovery over a 2-to-1 oracle.
    Simon {
        #[command(subcommand)]
        action: SimonAction,
    },
    /// Amplitude-amplification search.
    Grover {
        #[command(subcommand)]
        action: GroverAction,
    },
    /// Classical query baselines.
    Classical {
        #[command(subcommand)]
        action: ClassicalAction,
    },
    /// Exhaustive population verifications.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// List oracle families.
    Enumerate {
        #[command(subcommand)]
        family: EnumerateFamily,
    },
    /// Separability verdict for a state read from a file.
    CheckSep {
        /// State file: first line n, then 2^n lines of "re im".
        #[arg(long = "state-file")]
        state_file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Args)]
#[group(id = "oracle_source", required = true, multiple = false)]
struct DjOracleArgs {
    /// Linear oracle as c=C,a=BITS.
    #[arg(long, group = "oracle_source")]
    linear: Option<String>,
    /// Truth table as 2^n characters of 0/1.
    #[arg(long, group = "oracle_source")]
    table: Option<String>,
    /// Truth-table file ("n=<k>" header plus table row).
    #[arg(long, group = "oracle_source")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DjAction {
    /// Full run: verdict, query count, trace.
    Run {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        oracle: DjOracleArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Per-step separability trace only.
    Trace {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        oracle: DjOracleArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum SimonAction {
    Run {
        #[arg(long)]
        n: usize,
        /// Period bit string; the oracle is the canonical coset labeling.
        #[arg(long)]
        a: String,
        #[arg(long = "max-rounds")]
        max_rounds: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum GroverAction {
    /// Iterated search with measurement.
    Run {
        #[arg(long)]
        n: usize,
        /// Marked basis indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
        #[arg(long)]
        iterations: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Post-oracle state of the first step, with its verdict.
    FirstStep {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Args)]
#[group(id = "classical_source", required = true, multiple = false)]
struct ClassicalOracleArgs {
    #[arg(long, group = "classical_source")]
    linear: Option<String>,
    #[arg(long, group = "classical_source")]
    table: Option<String>,
}

#[derive(Subcommand)]
enum ClassicalAction {
    /// Deterministic exact decision (worst case 2^(n−1)+1 queries).
    DjExact {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        oracle: ClassicalOracleArgs,
    },
    /// Linear-promise decision (n+1 queries).
    DjLinear {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        oracle: ClassicalOracleArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyKind {
    Prop1,
    Prop2,
    Prop3,
    Prop5,
    Simon,
    Grover,
    Lowerbound,
}

#[derive(Subcommand)]
enum VerifyTarget {
    #[command(name = "prop1")]
    Prop1(VerifyArgs),
    #[command(name = "prop2")]
    Prop2(VerifyArgs),
    #[command(name = "prop3")]
    Prop3(VerifyArgs),
    #[command(name = "prop5")]
    Prop5(VerifyArgs),
    Simon(VerifyArgs),
    Grover(VerifyArgs),
    Lowerbound(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random product states sampled per conserving oracle.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    /// Worker cap for sweeps; defaults to all available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum EnumerateFamily {
    /// All 2^(n+1) linear functions.
    Linear {
        #[arg(long)]
        n: usize,
    },
    /// All constant and balanced truth tables (n ≤ 4).
    Promise {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    let quiet = cli.quiet;
    match run(cli) {
        Ok(outcome) => match output::emit(&outcome, format, out.as_deref(), quiet) {
            Ok(()) => outcome.exit_code,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    let out_path = cli.out.as_ref().map(|p| p.display().to_string());
    let config = |subcommand: &str| ResolvedConfig::new(subcommand, format, out_path.clone());

    match cli.command {
        Command::Dj { action } => {
            let (label, n, oracle_args, tol) = match &action {
                DjAction::Run { n, oracle, tol } => ("dj run", *n, oracle, *tol),
                DjAction::Trace { n, oracle, tol } => ("dj trace", *n, oracle, *tol),
            };
            let (oracle, echo) = resolve_oracle(
                n,
                oracle_args.linear.as_deref(),
                oracle_args.table.as_deref(),
                oracle_args.file.as_deref(),
            )?;
            let result = run_dj(&oracle, tol).context("decision run failed")?;
            let config = config(label)
                .with_n(n)
                .with_oracle(echo)
                .with_tolerance(tol);
            let payload = match action {
                DjAction::Run { .. } => Payload::Dj(result),
                DjAction::Trace { .. } => Payload::Trace(result.trace),
            };
            Ok(Outcome::ok(config, payload))
        }

        Command::Simon { action } => {
            let SimonAction::Run {
                n,
                a,
                max_rounds,
                seed,
                tol,
            } = action;
            let a: Bits = a.parse().context("bad period bit string")?;
            if a.width() != n {
                bail!("period width {} does not match --n {n}", a.width());
            }
            let oracle = VectorOracle::with_period(n, a)?;
            let max_rounds = max_rounds.unwrap_or(20 * n as u32);
            let result = run_simon(&oracle, &mut seeded(seed), max_rounds, tol)?;
            let failed = result.recovered_a.is_none();
            let config = config("simon run")
                .with_n(n)
                .with_oracle(OracleEcho::Period { a: a.to_string() })
                .with_seed(seed)
                .with_tolerance(tol)
                .with_max_rounds(max_rounds);
            let mut outcome = Outcome::ok(config, Payload::Simon(result));
            if failed {
                outcome.exit_code = ExitCode::from(1);
            }
            Ok(outcome)
        }

        Command::Grover { action } => match action {
            GroverAction::Run {
                n,
                marked,
                iterations,
                seed,
                tol,
            } => {
                let oracle = BooleanOracle::marking(n, &marked)?;
                let result = run_grover(&oracle, &mut seeded(seed), iterations, tol)?;
                let config = config("grover run")
                    .with_n(n)
                    .with_oracle(OracleEcho::Marked {
                        indices: marked.clone(),
                    })
                    .with_seed(seed)
                    .with_tolerance(tol)
                    .with_iterations(result.iterations);
                Ok(Outcome::ok(config, Payload::Grover(result)))
            }
            GroverAction::FirstStep { n, marked, tol } => {
                let oracle = BooleanOracle::marking(n, &marked)?;
                let state = grover_first_step_state(&oracle)?;
                let verdict = factor_state(&state, tol)?;
                let config = config("grover first-step")
                    .with_n(n)
                    .with_oracle(OracleEcho::Marked {
                        indices: marked.clone(),
                    })
                    .with_tolerance(tol);
                Ok(Outcome::ok(
                    config,
                    Payload::FirstStep {
                        amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
                        verdict,
                    },
                ))
            }
        },

        Command::Classical { action } => match action {
            ClassicalAction::DjExact { n, oracle } => {
                let (oracle, echo) =
                    resolve_oracle(n, oracle.linear.as_deref(), oracle.table.as_deref(), None)?;
                let (verdict, log) = classical_dj_exact(&oracle)?;
                let config = config("classical dj-exact").with_n(n).with_oracle(echo);
                Ok(Outcome::ok(
                    config,
                    Payload::ClassicalExact {
                        verdict,
                        queries: log.count(),
                        query_log: log,
                    },
                ))
            }
            ClassicalAction::DjLinear { n, oracle } => {
                let (oracle, echo) =
                    resolve_oracle(n, oracle.linear.as_deref(), oracle.table.as_deref(), None)?;
                let (verdict, lin, log) = classical_dj_linear(&oracle)?;
                let config = config("classical dj-linear").with_n(n).with_oracle(echo);
                Ok(Outcome::ok(
                    config,
                    Payload::ClassicalLinear {
                        verdict,
                        c: lin.c as u8,
                        a: lin.a.to_string(),
                        queries: log.count(),
                        query_log: log,
                    },
                ))
            }
        },

        Command::Verify { target } => {
            let (kind, args) = match &target {
                VerifyTarget::Prop1(a) => (VerifyKind::Prop1, a),
                VerifyTarget::Prop2(a) => (VerifyKind::Prop2, a),
                VerifyTarget::Prop3(a) => (VerifyKind::Prop3, a),
                VerifyTarget::Prop5(a) => (VerifyKind::Prop5, a),
                VerifyTarget::Simon(a) => (VerifyKind::Simon, a),
                VerifyTarget::Grover(a) => (VerifyKind::Grover, a),
                VerifyTarget::Lowerbound(a) => (VerifyKind::Lowerbound, a),
            };
            run_verify(kind, args, config)
        }

        Command::Enumerate { family } => match family {
            EnumerateFamily::Linear { n } => {
                let rows: Vec<output::LinearRow> = enumerate_linear_family(n)?
                    .map(|lin| output::LinearRow {
                        c: lin.c as u8,
                        a: lin.a.to_string(),
                        truth_table: lin.expand().truth_string(),
                        class: lin.expand().classify(),
                    })
                    .collect();
                let config = config("enumerate linear").with_n(n);
                Ok(Outcome::ok(config, Payload::EnumerateLinear(rows)))
            }
            EnumerateFamily::Promise { n } => {
                let rows: Vec<output::PromiseRow> = enumerate_promise_functions(n)?
                    .iter()
                    .map(|f| output::PromiseRow {
                        truth_table: f.truth_string(),
                        class: f.classify(),
                    })
                    .collect();
                let config = config("enumerate promise").with_n(n);
                Ok(Outcome::ok(config, Payload::EnumeratePromise(rows)))
            }
        },

        Command::CheckSep { state_file, tol } => {
            let text = std::fs::read_to_string(&state_file)
                .with_context(|| format!("cannot read {}", state_file.display()))?;
            let state = read_state_text(&text)?;
            let verdict = factor_state(&state, tol)?;
            let config = config("check-sep")
                .with_n(state.n())
                .with_tolerance(tol)
                .with_state_file(state_file.display().to_string());
            Ok(Outcome::ok(config, Payload::CheckSep(verdict)))
        }
    }
}

fn run_verify(
    kind: VerifyKind,
    args: &VerifyArgs,
    config: impl Fn(&str) -> ResolvedConfig,
) -> Result<Outcome> {
    let VerifyArgs {
        n,
        seed,
        samples,
        jobs,
        tol,
    } = *args;

    let (label, report): (&str, VerificationReport) = match kind {
        VerifyKind::Prop1 => ("verify prop1", verify_linear_family_classes(n)?),
        VerifyKind::Prop2 => (
            "verify prop2",
            verify_dj_linear_no_entanglement(n, tol, jobs)?,
        ),
        VerifyKind::Prop3 => ("verify prop3", verify_separable_maximality(n, tol, jobs)?),
        VerifyKind::Prop5 => (
            "verify prop5",
            verify_phase_conservation(n, tol, seed, samples, jobs)?,
        ),
        VerifyKind::Simon => ("verify simon", verify_simon_entanglement(n, tol)?),
        VerifyKind::Grover => ("verify grover", verify_grover_entanglement(n, tol, jobs)?),
        VerifyKind::Lowerbound => {
            let cert = verify_exact_lower_bound(n)?;
            let certified = cert.certified();
            let mut outcome = Outcome::ok(
                config("verify lowerbound").with_n(n),
                Payload::LowerBound(cert),
            );
            if !certified {
                outcome.exit_code = ExitCode::from(1);
            }
            return Ok(outcome);
        }
    };

    let verified = report.verified();
    let duration = report.duration;
    let mut cfg = config(label).with_n(n).with_seed(seed).with_tolerance(tol);
    if matches!(kind, VerifyKind::Prop5) {
        cfg = cfg.with_samples(samples);
    }
    if let Some(jobs) = jobs {
        cfg = cfg.with_jobs(jobs);
    }
    let mut outcome = Outcome::ok(cfg, Payload::Verify(report));
    outcome.summary = Some(format!(
        "{label}: {} in {duration:.2?}",
        if verified { "verified" } else { "COUNTEREXAMPLES FOUND" }
    ));
    if !verified {
        outcome.exit_code = ExitCode::from(1);
    }
    Ok(outcome)
}
