// SPDX-License-Identifier: Apache-2.0

//! End-to-end runs of the oracle algorithms, with a separability verdict
//! recorded at every intermediate state.

mod dj;
mod grover;
mod simon;

pub use dj::{run_dj, DJResult, DJ_DECISION_TOL};
pub use grover::{default_grover_iterations, grover_first_step_state, run_grover, GroverResult};
pub use simon::{gf2_solve_period, oracle_round_state, run_simon, simon_round_state, SimonResult};

use serde::Serialize;

use crate::error::Result;
use crate::separability::{factor_state, SeparabilityVerdict};
use crate::state::StateVector;

/// One labelled step of an algorithm run and its separability verdict.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub label: String,
    #[serde(flatten)]
    pub verdict: SeparabilityVerdict,
}

/// The ordered sequence of per-step separability verdicts for one run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EntanglementTrace {
    pub entries: Vec<TraceEntry>,
}

impl EntanglementTrace {
    pub fn new() -> Self {
        EntanglementTrace {
            entries: Vec::new(),
        }
    }

    pub(crate) fn record(
        &mut self,
        label: impl Into<String>,
        state: &StateVector,
        tol: f64,
    ) -> Result<()> {
        let verdict = factor_state(state, tol)?;
        self.entries.push(TraceEntry {
            label: label.into(),
            verdict,
        });
        Ok(())
    }

    pub fn all_separable(&self) -> bool {
        self.entries.iter().all(|e| e.verdict.is_separable())
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn verdict(&self, label: &str) -> Option<&SeparabilityVerdict> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| &e.verdict)
    }
}
