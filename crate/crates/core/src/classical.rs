// SPDX-License-Identifier: Apache-2.0

//! Classical query baselines for the promise problem.
//!
//! Two reference solvers: the unconditioned deterministic decision procedure
//! (worst case 2^(n−1)+1 queries) and the linear-promise solver (n+1
//! queries: f(0) plus the n unit vectors). All queries go through the
//! counted black-box interface so logs and oracle counters agree.

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::oracle::{BooleanOracle, LinearBooleanFunction, PromiseClass};

/// Every black-box query a run made, in order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct QueryLog {
    pub queried: Vec<usize>,
    pub answers: Vec<bool>,
}

impl QueryLog {
    fn record(&mut self, f: &BooleanOracle, x: usize) -> bool {
        let answer = f.query(x);
        self.queried.push(x);
        self.answers.push(answer);
        answer
    }

    pub fn count(&self) -> usize {
        self.queried.len()
    }
}

/// Deterministic exact decision: query indices in ascending order until two
/// answers differ (balanced) or 2^(n−1)+1 equal answers force constant.
pub fn classical_dj_exact(f: &BooleanOracle) -> Result<(PromiseClass, QueryLog)> {
    if f.classify() == PromiseClass::Neither {
        return Err(Error::PromiseViolation);
    }
    let mut log = QueryLog::default();
    let first = log.record(f, 0);
    let limit = (1 << (f.n() - 1)) + 1;
    for x in 1..f.len() {
        if log.count() == limit {
            break;
        }
        if log.record(f, x) != first {
            return Ok((PromiseClass::Balanced, log));
        }
    }
    Ok((PromiseClass::Constant, log))
}

/// Exact decision under the linear promise: f(0) gives c, the unit vectors
/// give a, for n+1 queries in total. The promise itself is not checked.
///
/// The n unit-vector queries alone yield only a_k ⊕ c; without f(0) the
/// constant/balanced decision stays ambiguous, hence n+1 rather than n.
/// Both are Θ(n).
pub fn classical_dj_linear(
    f: &BooleanOracle,
) -> Result<(PromiseClass, LinearBooleanFunction, QueryLog)> {
    let n = f.n();
    let mut log = QueryLog::default();
    let c = log.record(f, 0);
    let mut a_value = 0u32;
    for pos in 0..n {
        let e = 1usize << (n - 1 - pos);
        if log.record(f, e) != c {
            a_value |= 1 << (n - 1 - pos);
        }
    }
    let a = Bits::new(a_value, n).expect("a fits in n bits");
    let lin = LinearBooleanFunction::new(c, a);
    let verdict = if a.is_zero() {
        PromiseClass::Constant
    } else {
        PromiseClass::Balanced
    };
    Ok((verdict, lin, log))
}

/// Certificate that no deterministic algorithm can decide the promise in
/// 2^(n−1) queries: every half-domain query set with equal answers admits
/// both a constant and a balanced completion.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundCertificate {
    pub n: usize,
    /// Number of (query set, answer) pairs examined.
    pub pairs_checked: u64,
    /// Pairs for which both completions exist (must equal `pairs_checked`).
    pub pairs_with_both_completions: u64,
    pub counterexamples: Vec<String>,
}

impl LowerBoundCertificate {
    pub fn certified(&self) -> bool {
        self.counterexamples.is_empty() && self.pairs_checked == self.pairs_with_both_completions
    }
}

/// Exhaustively verify the completion argument for n <= 3.
pub fn verify_exact_lower_bound(n: usize) -> Result<LowerBoundCertificate> {
    if n == 0 || n > 3 {
        return Err(Error::SweepTooLarge {
            n,
            limit: 3,
            what: "lower-bound certification",
        });
    }
    let domain = 1usize << n;
    let half = domain / 2;
    let mut pairs_checked = 0u64;
    let mut pairs_with_both = 0u64;
    let mut counterexamples = Vec::new();

    for set in 0u64..1 << domain {
        if set.count_ones() as usize != half {
            continue;
        }
        for answer in [false, true] {
            pairs_checked += 1;
            // Constant completion: f identically `answer`.
            let constant = BooleanOracle::constant(n, answer)?;
            // Balanced completion: `answer` on the set, flipped off it.
            let balanced =
                BooleanOracle::from_fn(n, |x| ((set >> x) & 1 == 1) == answer)?;

            let agree = |oracle: &BooleanOracle| {
                (0..domain)
                    .filter(|&x| (set >> x) & 1 == 1)
                    .all(|x| oracle.table_value(x) == answer)
            };
            let ok = agree(&constant)
                && agree(&balanced)
                && constant.classify() == PromiseClass::Constant
                && balanced.classify() == PromiseClass::Balanced;
            if ok {
                pairs_with_both += 1;
            } else {
                counterexamples.push(format!("set={set:0width$b} answer={answer}", width = domain));
            }
        }
    }

    Ok(LowerBoundCertificate {
        n,
        pairs_checked,
        pairs_with_both_completions: pairs_with_both,
        counterexamples,
    })
}
