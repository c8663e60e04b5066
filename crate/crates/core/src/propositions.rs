// SPDX-License-Identifier: Apache-2.0

//! Exhaustive desk-scale verification of the separability claims.
//!
//! Each verifier sweeps an entire population (linear functions, promise
//! functions, all Boolean functions, all periods, all marked subsets),
//! checks the claimed equivalence pointwise, and returns a report whose
//! counterexample list is empty exactly when the claim held. Sweeps are
//! partitioned into index ranges and merged deterministically, so reports
//! are bit-for-bit reproducible for a fixed seed regardless of worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algorithms::{grover_first_step_state, oracle_round_state, run_dj, simon_round_state};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::oracle::{
    enumerate_linear_family, BooleanOracle, LinearBooleanFunction, PromiseClass, VectorOracle,
};
use crate::rng;
use crate::separability::{
    angle_distance, extract_linear_from_state, factor_state, reconstruct, ProductDecomposition,
};
use crate::sweep::{chunk_ranges, map_ranges};

use std::f64::consts::{FRAC_PI_4, PI};

/// Largest n for which 2^(2^n) sweeps stay desk-sized.
pub const MAX_FUNCTION_SWEEP: usize = 4;

/// Largest n for the linear-family verifiers.
pub const MAX_LINEAR_SWEEP: usize = 10;

const SWEEP_CHUNK: u64 = 512;
const MAX_STORED_COUNTEREXAMPLES: usize = 32;

/// Outcome of one verification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// Verifier id as used by the command line (`prop1`, `simon`, …).
    pub proposition: String,
    pub n: usize,
    pub population: u64,
    pub passes: u64,
    /// Failing cases; empty exactly when the claim verified.
    pub counterexamples: Vec<String>,
    /// Named counts backing the claim (separable counts, class splits, …).
    pub stats: BTreeMap<String, u64>,
    #[serde(skip)]
    pub duration: Duration,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Partial tally produced by one sweep range.
#[derive(Clone, Debug, Default)]
struct Tally {
    population: u64,
    passes: u64,
    counterexamples: Vec<String>,
    stats: BTreeMap<String, u64>,
}

impl Tally {
    fn pass(&mut self) {
        self.population += 1;
        self.passes += 1;
    }

    fn fail(&mut self, label: String) {
        self.population += 1;
        self.counterexamples.push(label);
    }

    fn bump(&mut self, key: &'static str, by: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += by;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.population += other.population;
        self.passes += other.passes;
        self.counterexamples.extend(other.counterexamples);
        for (k, v) in other.stats {
            *self.stats.entry(k).or_insert(0) += v;
        }
        self
    }
}

fn finish(proposition: &str, n: usize, mut tally: Tally, started: Instant) -> VerificationReport {
    let total = tally.counterexamples.len() as u64;
    if total > 0 {
        tally
            .stats
            .insert("counterexamples_total".to_string(), total);
        tally.counterexamples.truncate(MAX_STORED_COUNTEREXAMPLES);
    }
    VerificationReport {
        proposition: proposition.to_string(),
        n,
        population: tally.population,
        passes: tally.passes,
        counterexamples: tally.counterexamples,
        stats: tally.stats,
        duration: started.elapsed(),
    }
}

fn check_linear_sweep(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LINEAR_SWEEP {
        return Err(Error::SweepTooLarge {
            n,
            limit: MAX_LINEAR_SWEEP,
            what: "linear-family sweeps",
        });
    }
    Ok(())
}

fn check_function_sweep(n: usize) -> Result<()> {
    if n == 0 || n > MAX_FUNCTION_SWEEP {
        return Err(Error::SweepTooLarge {
            n,
            limit: MAX_FUNCTION_SWEEP,
            what: "whole-function-space sweeps",
        });
    }
    Ok(())
}

/// Every linear function is constant (exactly the two with a = 0) or
/// balanced (exactly 2·(2^n − 1)).
pub fn verify_linear_family_classes(n: usize) -> Result<VerificationReport> {
    check_linear_sweep(n)?;
    let started = Instant::now();
    let mut tally = Tally::default();

    for lin in enumerate_linear_family(n)? {
        let class = lin.expand().classify();
        let expected = if lin.a.is_zero() {
            PromiseClass::Constant
        } else {
            PromiseClass::Balanced
        };
        if class == expected {
            tally.pass();
            match class {
                PromiseClass::Constant => tally.bump("constant_count", 1),
                PromiseClass::Balanced => tally.bump("balanced_count", 1),
                PromiseClass::Neither => unreachable!(),
            }
        } else {
            tally.fail(format!("c={} a={}: classified {class:?}", lin.c as u8, lin.a));
        }
    }

    let constant = tally.stats.get("constant_count").copied().unwrap_or(0);
    let balanced = tally.stats.get("balanced_count").copied().unwrap_or(0);
    if constant != 2 {
        tally.fail(format!("constant count {constant}, expected 2"));
    }
    if balanced != 2 * ((1u64 << n) - 1) {
        tally.fail(format!("balanced count {balanced}, expected 2·(2^n − 1)"));
    }

    Ok(finish("prop1", n, tally, started))
}

fn linear_by_index(n: usize, index: u64) -> LinearBooleanFunction {
    // Index layout matches enumerate_linear_family: (a, c) ascending.
    let a = Bits::new((index >> 1) as u32, n).expect("index in range");
    LinearBooleanFunction::new(index & 1 == 1, a)
}

/// The decision circuit never entangles on linear functions: every trace
/// step is separable and the post-oracle register carries exactly the
/// product form that encodes (c, a).
pub fn verify_dj_linear_no_entanglement(
    n: usize,
    tol: f64,
    jobs: Option<usize>,
) -> Result<VerificationReport> {
    check_linear_sweep(n)?;
    let started = Instant::now();
    let total = 1u64 << (n + 1);

    let partials = map_ranges(chunk_ranges(total, 64), jobs, |range| {
        let mut tally = Tally::default();
        for index in range {
            let lin = linear_by_index(n, index);
            let label = || format!("c={} a={}", lin.c as u8, lin.a);
            match check_dj_linear_case(&lin, tol) {
                Ok(()) => tally.pass(),
                Err(why) => tally.fail(format!("{}: {why}", label())),
            }
        }
        tally
    });
    let tally = partials.into_iter().fold(Tally::default(), Tally::merge);

    Ok(finish("prop2", n, tally, started))
}

fn check_dj_linear_case(lin: &LinearBooleanFunction, tol: f64) -> std::result::Result<(), String> {
    let oracle = lin.expand();
    let result = run_dj(&oracle, tol).map_err(|e| e.to_string())?;
    for entry in &result.trace.entries {
        if !entry.verdict.is_separable() {
            return Err(format!("step {} entangled", entry.label));
        }
    }

    // The post-oracle register must be the product state with θ = π/4,
    // φ_k = π·a_k and global sign (−1)^c.
    let register = grover_first_step_state(&oracle).map_err(|e| e.to_string())?;
    let verdict = factor_state(&register, tol).map_err(|e| e.to_string())?;
    let decomposition = verdict
        .decomposition()
        .ok_or_else(|| "post-oracle register entangled".to_string())?;
    for (qubit, factor) in decomposition.factors.iter().enumerate() {
        if (factor.theta - FRAC_PI_4).abs() > tol {
            return Err(format!("θ_{qubit} = {} off π/4", factor.theta));
        }
        let expected_phi = if lin.a.get(qubit) { PI } else { 0.0 };
        if angle_distance(factor.phi, expected_phi) > tol {
            return Err(format!("φ_{qubit} = {} off {expected_phi}", factor.phi));
        }
    }
    let expected_global = if lin.c { PI } else { 0.0 };
    if angle_distance(decomposition.global_phase, expected_global) > tol {
        return Err(format!(
            "global phase {} off {expected_global}",
            decomposition.global_phase
        ));
    }

    // Round trip: the register determines (c, a) again.
    match extract_linear_from_state(&register, tol).map_err(|e| e.to_string())? {
        Some(found) if found == *lin => Ok(()),
        Some(found) => Err(format!(
            "extracted c={} a={} instead",
            found.c as u8, found.a
        )),
        None => Err("extraction failed".to_string()),
    }
}

/// Separability of the post-oracle state singles out exactly the linear
/// functions among all constant/balanced oracles; their count is 2^(n+1).
pub fn verify_separable_maximality(
    n: usize,
    tol: f64,
    jobs: Option<usize>,
) -> Result<VerificationReport> {
    check_function_sweep(n)?;
    let started = Instant::now();
    let table_bits = 1u32 << n;
    let half = table_bits / 2;
    let total = 1u64 << table_bits;

    let partials = map_ranges(chunk_ranges(total, SWEEP_CHUNK), jobs, |range| {
        let mut tally = Tally::default();
        for mask in range {
            let ones = mask.count_ones();
            if !(ones == 0 || ones == table_bits || ones == half) {
                continue;
            }
            match check_separable_iff_linear(n, mask, tol) {
                Ok(separable) => {
                    tally.pass();
                    if separable {
                        tally.bump("separable_count", 1);
                    }
                }
                Err(why) => tally.fail(why),
            }
        }
        tally
    });
    let mut tally = partials.into_iter().fold(Tally::default(), Tally::merge);

    let separable = tally.stats.get("separable_count").copied().unwrap_or(0);
    if separable != 1 << (n + 1) {
        tally.fail(format!(
            "separable count {separable}, expected 2^(n+1) = {}",
            1u64 << (n + 1)
        ));
    }

    Ok(finish("prop3", n, tally, started))
}

/// Shared pointwise check: post-oracle state separable ⟺ table is linear.
/// Returns whether the state was separable, or a counterexample label.
fn check_separable_iff_linear(
    n: usize,
    mask: u64,
    tol: f64,
) -> std::result::Result<bool, String> {
    let f = BooleanOracle::from_truth_mask(n, mask).map_err(|e| e.to_string())?;
    let state = grover_first_step_state(&f).map_err(|e| e.to_string())?;
    let separable = factor_state(&state, tol)
        .map_err(|e| e.to_string())?
        .is_separable();
    let linear = f.identify_linear().is_some();
    if separable == linear {
        Ok(separable)
    } else {
        Err(format!(
            "table {}: separable={separable} linear={linear}",
            f.truth_string()
        ))
    }
}

/// Phase oracles that conserve separability are exactly the linear family:
/// the uniform superposition is a complete witness for the negative
/// direction, and random product states sample the positive direction.
pub fn verify_phase_conservation(
    n: usize,
    tol: f64,
    seed: u64,
    samples: usize,
    jobs: Option<usize>,
) -> Result<VerificationReport> {
    check_function_sweep(n)?;
    let started = Instant::now();
    let total = 1u64 << (1u32 << n);

    let partials = map_ranges(chunk_ranges(total, SWEEP_CHUNK), jobs, |range| {
        let mut tally = Tally::default();
        for mask in range {
            let (conserving, fail) = match check_separable_iff_linear(n, mask, tol) {
                Ok(separable) => (separable, None),
                Err(why) => (false, Some(why)),
            };
            if let Some(why) = fail {
                tally.fail(format!("witness direction: {why}"));
                continue;
            }
            if !conserving {
                tally.pass();
                continue;
            }

            // Positive direction: the oracle must also conserve randomly
            // sampled product states. Per-function streams keep the draw
            // independent of sweep partitioning.
            tally.bump("conserving_count", 1);
            let f = BooleanOracle::from_truth_mask(n, mask).expect("mask in range");
            let mut sample_failure = None;
            for s in 0..samples {
                let mut rng = rng::stream(seed, mask * samples as u64 + s as u64);
                let product = reconstruct(&ProductDecomposition::sample(n, &mut rng));
                let image = product.apply_phase_oracle(&f).expect("dimensions match");
                match factor_state(&image, tol) {
                    Ok(v) if v.is_separable() => {}
                    Ok(_) => {
                        sample_failure = Some(format!(
                            "table {} entangled a sampled product state (sample {s})",
                            f.truth_string()
                        ));
                        break;
                    }
                    Err(e) => {
                        sample_failure = Some(format!("table {}: {e}", f.truth_string()));
                        break;
                    }
                }
            }
            tally.bump("samples_checked", samples as u64);
            match sample_failure {
                None => tally.pass(),
                Some(why) => tally.fail(why),
            }
        }
        tally
    });
    let mut tally = partials.into_iter().fold(Tally::default(), Tally::merge);

    let conserving = tally.stats.get("conserving_count").copied().unwrap_or(0);
    if conserving != 1 << (n + 1) {
        tally.fail(format!(
            "conserving count {conserving}, expected 2^(n+1) = {}",
            1u64 << (n + 1)
        ));
    }

    Ok(finish("prop5", n, tally, started))
}

/// Every non-trivial period entangles the round state; the constant control
/// table (which no valid period produces) stays separable.
pub fn verify_simon_entanglement(n: usize, tol: f64) -> Result<VerificationReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported {
            n,
            expected: "2 or 3 for period-entanglement sweeps",
        });
    }
    let started = Instant::now();
    let mut tally = Tally::default();

    for a in Bits::all(n).skip(1) {
        let f = VectorOracle::with_period(n, a)?;
        let psi2 = simon_round_state(&f)?;
        if factor_state(&psi2, tol)?.is_separable() {
            tally.fail(format!("period {a}: round state separable"));
        } else {
            tally.pass();
            tally.bump("entangled_periods", 1);
        }
    }

    // Control: a constant output table keeps the round state separable.
    let control = oracle_round_state(n, &vec![0; 1 << n])?;
    if factor_state(&control, tol)?.is_separable() {
        tally.pass();
        tally.bump("constant_control_separable", 1);
    } else {
        tally.fail("constant control table: round state entangled".to_string());
    }

    Ok(finish("simon", n, tally, started))
}

/// Separable first-step states occur exactly for marked sets whose indicator
/// is linear — none, all, or exactly half the elements, 2^(n+1) sets in all.
pub fn verify_grover_entanglement(
    n: usize,
    tol: f64,
    jobs: Option<usize>,
) -> Result<VerificationReport> {
    check_function_sweep(n)?;
    let started = Instant::now();
    let total = 1u64 << (1u32 << n);

    let partials = map_ranges(chunk_ranges(total, SWEEP_CHUNK), jobs, |range| {
        let mut tally = Tally::default();
        for mask in range {
            match check_separable_iff_linear(n, mask, tol) {
                Ok(separable) => {
                    tally.pass();
                    if separable {
                        tally.bump("separable_count", 1);
                    }
                    if mask.count_ones() == 1 && separable {
                        tally.fail(format!("singleton mask {mask:b} separable"));
                    }
                }
                Err(why) => tally.fail(why),
            }
        }
        tally
    });
    let mut tally = partials.into_iter().fold(Tally::default(), Tally::merge);

    let separable = tally.stats.get("separable_count").copied().unwrap_or(0);
    if separable != 1 << (n + 1) {
        tally.fail(format!(
            "separable count {separable}, expected 2^(n+1) = {}",
            1u64 << (n + 1)
        ));
    }

    Ok(finish("grover", n, tally, started))
}
