// SPDX-License-Identifier: Apache-2.0

//! Turning command-line oracle specifications into oracles.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use qsep_core::{Bits, BooleanOracle, LinearBooleanFunction};

/// Echo of the oracle source, embedded in the report config.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleEcho {
    Linear { c: u8, a: String },
    Table { truth_table: String },
    File { path: String, truth_table: String },
    Period { a: String },
    Marked { indices: Vec<usize> },
}

/// Parse `c=C,a=BITS`.
pub fn parse_linear_spec(spec: &str) -> Result<LinearBooleanFunction> {
    let mut c: Option<bool> = None;
    let mut a: Option<Bits> = None;
    for part in spec.split(',') {
        let Some((key, value)) = part.split_once('=') else {
            bail!("expected key=value in linear spec, got {part:?}");
        };
        match key.trim() {
            "c" => {
                c = Some(match value.trim() {
                    "0" => false,
                    "1" => true,
                    other => bail!("c must be 0 or 1, got {other:?}"),
                });
            }
            "a" => {
                a = Some(value.trim().parse().context("bad a bit string")?);
            }
            other => bail!("unknown linear spec key {other:?}"),
        }
    }
    match (c, a) {
        (Some(c), Some(a)) => Ok(LinearBooleanFunction::new(c, a)),
        _ => bail!("linear spec needs both c= and a= (e.g. c=0,a=101)"),
    }
}

/// Resolve exactly one of the oracle sources against the declared width.
pub fn resolve_oracle(
    n: usize,
    linear: Option<&str>,
    table: Option<&str>,
    file: Option<&Path>,
) -> Result<(BooleanOracle, OracleEcho)> {
    if let Some(spec) = linear {
        let lin = parse_linear_spec(spec)?;
        if lin.n() != n {
            bail!("a has {} bits but --n is {n}", lin.n());
        }
        let echo = OracleEcho::Linear {
            c: lin.c as u8,
            a: lin.a.to_string(),
        };
        return Ok((lin.expand(), echo));
    }
    if let Some(row) = table {
        if row.len() != 1 << n {
            bail!("truth table has {} entries but --n {n} needs {}", row.len(), 1 << n);
        }
        let oracle = BooleanOracle::from_text(&format!("n={n}\n{row}\n"))
            .context("malformed truth table")?;
        let echo = OracleEcho::Table {
            truth_table: row.to_string(),
        };
        return Ok((oracle, echo));
    }
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let oracle = BooleanOracle::from_text(&text)
            .with_context(|| format!("malformed truth-table file {}", path.display()))?;
        if oracle.n() != n {
            bail!("file declares n={} but --n is {n}", oracle.n());
        }
        let echo = OracleEcho::File {
            path: path.display().to_string(),
            truth_table: oracle.truth_string(),
        };
        return Ok((oracle, echo));
    }
    bail!("one oracle source (--linear, --table or --file) is required");
}
