// SPDX-License-Identifier: Apache-2.0

//! Amplitude-amplification search over a marking oracle.
//!
//! The first step — phase oracle on the uniform superposition — is exposed
//! on its own because its separability already decides whether an instance
//! can run without entanglement; the remaining iterations alternate the
//! oracle with inversion about the mean.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::EntanglementTrace;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;
use crate::state::StateVector;

#[derive(Clone, Debug, Serialize)]
pub struct GroverResult {
    pub measured: Bits,
    pub success: bool,
    pub iterations: u32,
    /// Probability of landing on a marked element, from the pre-measurement
    /// amplitudes.
    pub success_probability: f64,
    /// Separability after each oracle and each diffusion application.
    pub trace: EntanglementTrace,
}

/// Phase oracle applied to the uniform superposition:
/// 2^{−n/2} Σ (−1)^{f(x)} |x⟩.
pub fn grover_first_step_state(f: &BooleanOracle) -> Result<StateVector> {
    StateVector::uniform(f.n())?.apply_phase_oracle(f)
}

/// floor(π/4 · √(N/M)), with a minimum of one iteration.
pub fn default_grover_iterations(n: usize, marked: usize) -> u32 {
    let ratio = ((1u64 << n) as f64 / marked as f64).sqrt();
    ((std::f64::consts::FRAC_PI_4 * ratio).floor() as u32).max(1)
}

/// Inversion about the mean: amp ↦ 2·mean − amp.
fn diffusion(state: &StateVector) -> StateVector {
    let mean = state.amplitudes().iter().sum::<Complex64>() / state.len() as f64;
    let amps = state
        .amplitudes()
        .iter()
        .map(|a| 2.0 * mean - a)
        .collect();
    StateVector::from_parts_unchecked(state.n(), amps)
}

/// Run the search. Instances with no marked elements or with every element
/// marked are rejected; their first-step states are the trivial separable
/// cases and carry no search problem.
pub fn run_grover(
    f: &BooleanOracle,
    rng: &mut impl Rng,
    iterations: Option<u32>,
    tol: f64,
) -> Result<GroverResult> {
    let n = f.n();
    let marked = f.count_ones();
    if marked == 0 {
        return Err(Error::InvalidMarkedSet("no marked elements".into()));
    }
    if marked == 1 << n {
        return Err(Error::InvalidMarkedSet("every element is marked".into()));
    }
    let iterations = iterations.unwrap_or_else(|| default_grover_iterations(n, marked));

    let mut state = StateVector::uniform(n)?;
    let mut trace = EntanglementTrace::new();
    for it in 1..=iterations {
        state = state.apply_phase_oracle(f)?;
        trace.record(format!("iter{it}_oracle"), &state, tol)?;
        state = diffusion(&state);
        trace.record(format!("iter{it}_diffusion"), &state, tol)?;
    }

    let success_probability = (0..state.len())
        .filter(|&x| f.table_value(x))
        .map(|x| state.probability(x))
        .sum();

    let all_qubits: Vec<usize> = (0..n).collect();
    let measured = state.measure_subset(&all_qubits, rng)?.bits;
    let success = f.table_value(measured.index());

    Ok(GroverResult {
        measured,
        success,
        iterations,
        success_probability,
        trace,
    })
}
