// SPDX-License-Identifier: Apache-2.0

//! The constant-versus-balanced decision circuit.
//!
//! One oracle application decides the promise: prepare |0…0⟩|1⟩, apply
//! Hadamards everywhere, apply the standard oracle once, apply Hadamards to
//! the input register, and read the probability of the all-zeros input
//! register. Constant functions put that probability at exactly 1, balanced
//! functions at exactly 0.

use serde::Serialize;

use super::EntanglementTrace;
use crate::error::{Error, Result};
use crate::oracle::{BooleanOracle, PromiseClass};
use crate::state::StateVector;

/// The all-zeros probability is compared against 1 within this tolerance.
pub const DJ_DECISION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct DJResult {
    pub verdict: PromiseClass,
    pub queries_used: u32,
    pub final_allzero_probability: f64,
    pub trace: EntanglementTrace,
}

/// Run the decision circuit on a promise oracle. The trace records the
/// separability of the full (n+1)-qubit state at ψ₀ through ψ₃.
pub fn run_dj(f: &BooleanOracle, tol: f64) -> Result<DJResult> {
    if f.classify() == PromiseClass::Neither {
        return Err(Error::PromiseViolation);
    }
    let n = f.n();
    let mut queries_used = 0u32;
    let mut trace = EntanglementTrace::new();

    let psi0 = StateVector::basis(n + 1, 1)?; // |0…0⟩|1⟩
    trace.record("psi0", &psi0, tol)?;

    let all_qubits: Vec<usize> = (0..=n).collect();
    let psi1 = psi0.hadamard_layer(&all_qubits)?;
    trace.record("psi1", &psi1, tol)?;

    let psi2 = psi1.apply_standard_boolean_oracle(f)?;
    queries_used += 1;
    trace.record("psi2", &psi2, tol)?;

    let x_register: Vec<usize> = (0..n).collect();
    let psi3 = psi2.hadamard_layer(&x_register)?;
    trace.record("psi3", &psi3, tol)?;

    // All-zeros input register, target qubit in either value.
    let final_allzero_probability = psi3.probability(0) + psi3.probability(1);
    let verdict = if (final_allzero_probability - 1.0).abs() <= DJ_DECISION_TOL {
        PromiseClass::Constant
    } else {
        PromiseClass::Balanced
    };

    Ok(DJResult {
        verdict,
        queries_used,
        final_allzero_probability,
        trace,
    })
}
