// SPDX-License-Identifier: Apache-2.0

//! Period finding for 2-to-1 vector oracles.
//!
//! Each round prepares Σ|x⟩|f(x)⟩, measures the output register, applies
//! Hadamards to the input register and measures it, yielding a uniformly
//! random y orthogonal to the period. Rounds repeat until the collected ys
//! span the full (n−1)-dimensional orthogonal space; the period is then the
//! unique non-zero nullspace vector.
//!
//! Note the stopping rank is n−1, not n: every observable y lies in the
//! hyperplane orthogonal to a non-zero period, so n linearly independent
//! values can never occur.

use rand::Rng;
use serde::Serialize;

use super::EntanglementTrace;
use crate::bits::Bits;
use crate::error::Result;
use crate::oracle::VectorOracle;
use crate::state::StateVector;

#[derive(Clone, Debug, Serialize)]
pub struct SimonResult {
    /// The recovered period, or `None` if `max_rounds` was exhausted.
    pub recovered_a: Option<Bits>,
    pub rounds_used: u32,
    pub collected_ys: Vec<Bits>,
    /// Step trace (ψ₀…ψ₄) of the last executed round.
    pub trace: EntanglementTrace,
}

/// The pre-measurement state ψ₂ = 2^{−n/2} Σ |x⟩|f(x)⟩ over 2n qubits.
pub fn simon_round_state(f: &VectorOracle) -> Result<StateVector> {
    oracle_round_state(f.n(), &f.raw_table())
}

/// ψ₂ for an arbitrary output table over n output qubits. Exposed separately
/// so harnesses can probe tables outside the 2-to-1 family, e.g. the
/// constant control case.
pub fn oracle_round_state(n: usize, table: &[usize]) -> Result<StateVector> {
    let x_register: Vec<usize> = (0..n).collect();
    StateVector::basis(2 * n, 0)?
        .hadamard_layer(&x_register)?
        .apply_standard_oracle(n, table)
}

fn simon_round(
    n: usize,
    table: &[usize],
    rng: &mut impl Rng,
    tol: f64,
) -> Result<(Bits, EntanglementTrace)> {
    let mut trace = EntanglementTrace::new();
    let x_register: Vec<usize> = (0..n).collect();
    let output_register: Vec<usize> = (n..2 * n).collect();

    let psi0 = StateVector::basis(2 * n, 0)?;
    trace.record("psi0", &psi0, tol)?;
    let psi1 = psi0.hadamard_layer(&x_register)?;
    trace.record("psi1", &psi1, tol)?;
    let psi2 = psi1.apply_standard_oracle(n, table)?;
    trace.record("psi2", &psi2, tol)?;
    let psi3 = psi2.measure_subset(&output_register, rng)?.state;
    trace.record("psi3", &psi3, tol)?;
    let psi4 = psi3.hadamard_layer(&x_register)?;
    trace.record("psi4", &psi4, tol)?;
    let y = psi4.measure_subset(&x_register, rng)?.bits;
    Ok((y, trace))
}

/// Row-echelon accumulator over GF(2).
#[derive(Default)]
struct Gf2Span {
    rows: Vec<u32>,
}

impl Gf2Span {
    fn reduce(&self, mut v: u32) -> u32 {
        for &row in &self.rows {
            let pivot = 31 - row.leading_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    /// Insert a vector; returns false if it was already in the span.
    fn insert(&mut self, v: u32) -> bool {
        let reduced = self.reduce(v);
        if reduced == 0 {
            return false;
        }
        self.rows.push(reduced);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduced form: each pivot column is zero in every other row.
    fn rref(&self) -> Vec<u32> {
        let mut rows = self.rows.clone();
        for i in 0..rows.len() {
            let pivot = 31 - rows[i].leading_zeros();
            for j in 0..rows.len() {
                if j != i && (rows[j] >> pivot) & 1 == 1 {
                    rows[j] ^= rows[i];
                }
            }
        }
        rows
    }
}

/// Gaussian elimination over GF(2). If the given ys span a space of
/// dimension n−1, return the unique non-zero vector orthogonal to all of
/// them; otherwise return `None`. (Dimension n leaves no non-zero solution.)
pub fn gf2_solve_period(n: usize, ys: &[Bits]) -> Option<Bits> {
    assert!(n >= 1, "period width must be at least 1");
    let mut span = Gf2Span::default();
    for y in ys {
        assert_eq!(y.width(), n, "width mismatch in period solve");
        span.insert(y.value());
    }
    if span.rank() != n - 1 {
        return None;
    }
    let rows = span.rref();
    let pivot_mask: u32 = rows.iter().map(|row| 1 << (31 - row.leading_zeros())).sum();
    let free_bit = (0..n as u32).rev().find(|&b| (pivot_mask >> b) & 1 == 0)?;
    let mut a = 1u32 << free_bit;
    for row in rows {
        if (row >> free_bit) & 1 == 1 {
            a |= 1 << (31 - row.leading_zeros());
        }
    }
    Some(Bits::new(a, n).expect("solution fits in n bits"))
}

/// Repeat measurement rounds until the period is determined or `max_rounds`
/// is exhausted. Failure is reported in the result, not as an error.
pub fn run_simon(
    f: &VectorOracle,
    rng: &mut impl Rng,
    max_rounds: u32,
    tol: f64,
) -> Result<SimonResult> {
    let n = f.n();
    let table = f.raw_table();
    let mut collected_ys = Vec::new();
    let mut trace = EntanglementTrace::new();
    let mut rounds_used = 0u32;

    loop {
        if let Some(a) = gf2_solve_period(n, &collected_ys) {
            return Ok(SimonResult {
                recovered_a: Some(a),
                rounds_used,
                collected_ys,
                trace,
            });
        }
        if rounds_used >= max_rounds {
            return Ok(SimonResult {
                recovered_a: None,
                rounds_used,
                collected_ys,
                trace,
            });
        }
        rounds_used += 1;
        let (y, round_trace) = simon_round(n, &table, rng, tol)?;
        trace = round_trace;
        collected_ys.push(y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::separability::{factor_state, DEFAULT_TOL};

    fn bits(s: &str) -> Bits {
        s.parse().unwrap()
    }

    /// Brute-force reference: the unique non-zero vector orthogonal to all
    /// ys, if the orthogonal space has exactly one non-zero element.
    fn brute_force_period(n: usize, ys: &[Bits]) -> Option<Bits> {
        let candidates: Vec<Bits> = Bits::all(n)
            .skip(1)
            .filter(|a| ys.iter().all(|y| !y.dot(*a)))
            .collect();
        match candidates.as_slice() {
            [unique] => Some(*unique),
            _ => None,
        }
    }

    #[test]
    fn round_state_layout() {
        // ψ₂ for a=11 is (|00,00⟩+|01,01⟩+|10,01⟩+|11,00⟩)/2 under the
        // canonical coset labels.
        let f = VectorOracle::with_period(2, bits("11")).unwrap();
        let psi2 = simon_round_state(&f).unwrap();
        for (x, expect) in [(0usize, 0usize), (1, 1), (2, 1), (3, 0)] {
            let idx = (x << 2) | expect;
            assert!((psi2.probability(idx) - 0.25).abs() < 1e-12);
        }
        assert!((psi2.norm_sqr() - 1.0).abs() < 1e-12);

        assert!(!factor_state(&psi2, DEFAULT_TOL).unwrap().is_separable());

        // A constant table (outside the 2-to-1 family) stays separable.
        let control = oracle_round_state(2, &[0, 0, 0, 0]).unwrap();
        assert!(factor_state(&control, DEFAULT_TOL).unwrap().is_separable());
    }

    #[test]
    fn output_measurement_collapses_to_coset() {
        // Enumerate the branches: outcome 00 leaves (|00⟩+|11⟩)/√2 on the
        // input register, outcome 01 leaves (|01⟩+|10⟩)/√2.
        let f = VectorOracle::with_period(2, bits("11")).unwrap();
        let psi2 = simon_round_state(&f).unwrap();
        for seed in 0..16 {
            let outcome = psi2.measure_subset(&[2, 3], &mut seeded(seed)).unwrap();
            let expected_indices: Vec<usize> = match outcome.bits.to_string().as_str() {
                "00" => vec![0b0000, 0b1100],
                "01" => vec![0b0101, 0b1001],
                other => panic!("impossible outcome {other}"),
            };
            for idx in 0..16 {
                let p = outcome.state.probability(idx);
                if expected_indices.contains(&idx) {
                    assert!((p - 0.5).abs() < 1e-12);
                } else {
                    assert!(p < 1e-24);
                }
            }
        }
    }

    #[test]
    fn gf2_examples_match_brute_force() {
        let ys = [bits("110"), bits("011")];
        let expect = brute_force_period(3, &ys).unwrap();
        assert_eq!(expect, bits("111"));
        assert_eq!(gf2_solve_period(3, &ys), Some(expect));

        assert_eq!(gf2_solve_period(3, &[bits("000")]), None);

        let ys = [bits("11")];
        assert_eq!(brute_force_period(2, &ys), Some(bits("11")));
        assert_eq!(gf2_solve_period(2, &ys), Some(bits("11")));

        // Rank deficit: one vector in width 3 leaves several candidates.
        assert_eq!(gf2_solve_period(3, &[bits("110")]), None);
        // Full rank: no non-zero vector is orthogonal to everything.
        assert_eq!(
            gf2_solve_period(2, &[bits("01"), bits("10"), bits("11")]),
            None
        );
    }

    #[test]
    fn gf2_agrees_with_brute_force_on_random_sets() {
        let mut rng = seeded(23);
        for n in 1..=6usize {
            for _ in 0..200 {
                let count = (rng.random::<u32>() % 5) as usize;
                let ys: Vec<Bits> = (0..count)
                    .map(|_| {
                        Bits::new(rng.random::<u32>() & ((1 << n) - 1), n).unwrap()
                    })
                    .collect();
                assert_eq!(
                    gf2_solve_period(n, &ys),
                    brute_force_period(n, &ys),
                    "mismatch for n={n}, ys={ys:?}"
                );
            }
        }
    }

    #[test]
    fn recovers_period_on_small_instances() {
        let f = VectorOracle::with_period(2, bits("11")).unwrap();
        let result = run_simon(&f, &mut seeded(0), 40, DEFAULT_TOL).unwrap();
        assert_eq!(result.recovered_a, Some(bits("11")));
        assert_eq!(result.trace.labels(), vec!["psi0", "psi1", "psi2", "psi3", "psi4"]);

        let f = VectorOracle::with_period(3, bits("101")).unwrap();
        let result = run_simon(&f, &mut seeded(1), 60, DEFAULT_TOL).unwrap();
        assert_eq!(result.recovered_a, Some(bits("101")));
        for y in &result.collected_ys {
            assert!(!y.dot(bits("101")), "collected y not orthogonal: {y}");
        }
    }

    #[test]
    fn exhausting_rounds_is_a_result_not_a_crash() {
        let f = VectorOracle::with_period(2, bits("10")).unwrap();
        let result = run_simon(&f, &mut seeded(0), 0, DEFAULT_TOL).unwrap();
        assert_eq!(result.recovered_a, None);
        assert_eq!(result.rounds_used, 0);
    }
}
