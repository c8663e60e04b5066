// SPDX-License-Identifier: Apache-2.0

//! Report envelope and writers.
//!
//! JSON is the source of truth: a top-level `{version, config, result}`
//! object with snake_case fields, angles in radians and complex amplitudes
//! as `[re, im]` pairs. TSV is a flat one-row-per-item summary for
//! spreadsheet diffing. Identical invocations produce byte-identical
//! reports; wall-clock timing goes to stderr only.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

use qsep_core::algorithms::{DJResult, EntanglementTrace, GroverResult, SimonResult};
use qsep_core::classical::{LowerBoundCertificate, QueryLog};
use qsep_core::propositions::VerificationReport;
use qsep_core::separability::SeparabilityVerdict;
use qsep_core::PromiseClass;

use crate::resolve::OracleEcho;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
        }
    }
}

/// Fully resolved invocation, echoed into every report for replayability.
#[derive(Serialize)]
pub struct ResolvedConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEcho>,
    pub seed: u64,
    pub tolerance: f64,
    pub format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_file: Option<String>,
}

impl ResolvedConfig {
    pub fn new(subcommand: &str, format: Format, out: Option<String>) -> Self {
        ResolvedConfig {
            subcommand: subcommand.to_string(),
            n: None,
            oracle: None,
            seed: crate::DEFAULT_SEED,
            tolerance: qsep_core::separability::DEFAULT_TOL,
            format: format.name(),
            out,
            max_rounds: None,
            iterations: None,
            samples: None,
            jobs: None,
            state_file: None,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_oracle(mut self, oracle: OracleEcho) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_max_rounds(mut self, rounds: u32) -> Self {
        self.max_rounds = Some(rounds);
        self
    }

    pub fn with_iterations(mut self, iterations: u32) -> Self {
        self.iterations = Some(iterations);
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }

    pub fn with_state_file(mut self, path: String) -> Self {
        self.state_file = Some(path);
        self
    }
}

#[derive(Serialize)]
pub struct LinearRow {
    pub c: u8,
    pub a: String,
    pub truth_table: String,
    pub class: PromiseClass,
}

#[derive(Serialize)]
pub struct PromiseRow {
    pub truth_table: String,
    pub class: PromiseClass,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Payload {
    Dj(DJResult),
    Trace(EntanglementTrace),
    Simon(SimonResult),
    Grover(GroverResult),
    FirstStep {
        amplitudes: Vec<[f64; 2]>,
        #[serde(flatten)]
        verdict: SeparabilityVerdict,
    },
    ClassicalExact {
        verdict: PromiseClass,
        queries: usize,
        query_log: QueryLog,
    },
    ClassicalLinear {
        verdict: PromiseClass,
        c: u8,
        a: String,
        queries: usize,
        query_log: QueryLog,
    },
    Verify(VerificationReport),
    LowerBound(LowerBoundCertificate),
    EnumerateLinear(Vec<LinearRow>),
    EnumeratePromise(Vec<PromiseRow>),
    CheckSep(SeparabilityVerdict),
}

pub struct Outcome {
    pub config: ResolvedConfig,
    pub payload: Payload,
    pub exit_code: ExitCode,
    pub summary: Option<String>,
}

impl Outcome {
    pub fn ok(config: ResolvedConfig, payload: Payload) -> Self {
        Outcome {
            config,
            payload,
            exit_code: ExitCode::SUCCESS,
            summary: None,
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    version: &'static str,
    config: &'a ResolvedConfig,
    result: &'a Payload,
}

pub fn emit(outcome: &Outcome, format: Format, out: Option<&Path>, quiet: bool) -> Result<()> {
    let text = match format {
        Format::Json => {
            let report = Report {
                version: env!("CARGO_PKG_VERSION"),
                config: &outcome.config,
                result: &outcome.payload,
            };
            let mut s = serde_json::to_string_pretty(&report).context("serializing report")?;
            s.push('\n');
            s
        }
        Format::Tsv => tsv(outcome),
    };

    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }

    if !quiet {
        if let Some(summary) = &outcome.summary {
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn class_name(class: PromiseClass) -> &'static str {
    match class {
        PromiseClass::Constant => "constant",
        PromiseClass::Balanced => "balanced",
        PromiseClass::Neither => "neither",
    }
}

fn verdict_cells(verdict: &SeparabilityVerdict) -> (&'static str, String) {
    match verdict {
        SeparabilityVerdict::Separable { decomposition, .. } => {
            let factors: Vec<String> = decomposition
                .factors
                .iter()
                .map(|f| format!("({:.6},{:.6})", f.theta, f.phi))
                .collect();
            (
                "separable",
                format!(
                    "global_phase={:.6};factors={}",
                    decomposition.global_phase,
                    factors.join(",")
                ),
            )
        }
        SeparabilityVerdict::Entangled { witness, .. } => (
            "entangled",
            format!(
                "qubit={};i={};j={};minor={:.6}",
                witness.qubit, witness.i, witness.j, witness.minor
            ),
        ),
    }
}

fn rows_to_tsv(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn trace_rows(trace: &EntanglementTrace) -> Vec<Vec<String>> {
    trace
        .entries
        .iter()
        .map(|entry| {
            let (verdict, detail) = verdict_cells(&entry.verdict);
            vec![entry.label.clone(), verdict.to_string(), detail]
        })
        .collect()
}

fn tsv(outcome: &Outcome) -> String {
    match &outcome.payload {
        Payload::Dj(result) => rows_to_tsv(
            &[
                "verdict",
                "queries_used",
                "final_allzero_probability",
                "all_separable",
            ],
            vec![vec![
                class_name(result.verdict).to_string(),
                result.queries_used.to_string(),
                format!("{:.12}", result.final_allzero_probability),
                result.trace.all_separable().to_string(),
            ]],
        ),
        Payload::Trace(trace) => rows_to_tsv(&["step", "verdict", "detail"], trace_rows(trace)),
        Payload::Simon(result) => rows_to_tsv(
            &["recovered_a", "rounds_used", "collected_ys"],
            vec![vec![
                result
                    .recovered_a
                    .map_or_else(|| "failure".to_string(), |a| a.to_string()),
                result.rounds_used.to_string(),
                result
                    .collected_ys
                    .iter()
                    .map(|y| y.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ]],
        ),
        Payload::Grover(result) => rows_to_tsv(
            &["measured", "success", "iterations", "success_probability"],
            vec![vec![
                result.measured.to_string(),
                result.success.to_string(),
                result.iterations.to_string(),
                format!("{:.12}", result.success_probability),
            ]],
        ),
        Payload::FirstStep { verdict, .. } => {
            let (v, detail) = verdict_cells(verdict);
            rows_to_tsv(
                &["verdict", "detail"],
                vec![vec![v.to_string(), detail]],
            )
        }
        Payload::ClassicalExact {
            verdict,
            queries,
            query_log,
        } => rows_to_tsv(
            &["verdict", "queries", "indices"],
            vec![vec![
                class_name(*verdict).to_string(),
                queries.to_string(),
                query_log
                    .queried
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ]],
        ),
        Payload::ClassicalLinear {
            verdict,
            c,
            a,
            queries,
            ..
        } => rows_to_tsv(
            &["verdict", "c", "a", "queries"],
            vec![vec![
                class_name(*verdict).to_string(),
                c.to_string(),
                a.clone(),
                queries.to_string(),
            ]],
        ),
        Payload::Verify(report) => rows_to_tsv(
            &[
                "proposition",
                "n",
                "population",
                "passes",
                "verified",
                "stats",
                "counterexamples",
            ],
            vec![vec![
                report.proposition.clone(),
                report.n.to_string(),
                report.population.to_string(),
                report.passes.to_string(),
                report.verified().to_string(),
                report
                    .stats
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";"),
                report.counterexamples.join("|"),
            ]],
        ),
        Payload::LowerBound(cert) => rows_to_tsv(
            &["n", "pairs_checked", "pairs_with_both_completions", "certified"],
            vec![vec![
                cert.n.to_string(),
                cert.pairs_checked.to_string(),
                cert.pairs_with_both_completions.to_string(),
                cert.certified().to_string(),
            ]],
        ),
        Payload::EnumerateLinear(rows) => rows_to_tsv(
            &["c", "a", "truth_table", "class"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.c.to_string(),
                        r.a.clone(),
                        r.truth_table.clone(),
                        class_name(r.class).to_string(),
                    ]
                })
                .collect(),
        ),
        Payload::EnumeratePromise(rows) => rows_to_tsv(
            &["truth_table", "class"],
            rows.iter()
                .map(|r| vec![r.truth_table.clone(), class_name(r.class).to_string()])
                .collect(),
        ),
        Payload::CheckSep(verdict) => {
            let (v, detail) = verdict_cells(verdict);
            rows_to_tsv(
                &["verdict", "detail"],
                vec![vec![v.to_string(), detail]],
            )
        }
    }
}
