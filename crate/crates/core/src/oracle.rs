// SPDX-License-Identifier: Apache-2.0

//! Black-box functions the algorithms query.
//!
//! Truth tables are packed bit arrays indexed by basis index, so the full
//! population of `n`-bit functions is a plain integer sweep for small `n`.
//! Each oracle carries a query counter with two access paths:
//!
//! * [`BooleanOracle::query`] — the counted black-box interface used by
//!   classical baselines; one call is one query.
//! * [`BooleanOracle::table_value`] — uncounted whole-table inspection used
//!   by the simulator and harnesses, where one oracle *application* to a
//!   state counts as a single query no matter how many amplitudes it touches.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::state::MAX_QUBITS;

/// Largest `n` for which all constant/balanced functions are enumerated.
pub const MAX_PROMISE_SWEEP: usize = 4;

/// Classification of a Boolean function under the constant-or-balanced promise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PromiseClass {
    Constant,
    Balanced,
    Neither,
}

/// A Boolean function f : {0,1}^n -> {0,1} given by its truth table.
#[derive(Debug)]
pub struct BooleanOracle {
    n: usize,
    blocks: Vec<u64>,
    queries: AtomicU64,
}

impl Clone for BooleanOracle {
    fn clone(&self) -> Self {
        BooleanOracle {
            n: self.n,
            blocks: self.blocks.clone(),
            queries: AtomicU64::new(self.queries.load(Ordering::Relaxed)),
        }
    }
}

impl PartialEq for BooleanOracle {
    fn eq(&self, other: &Self) -> bool {
        // The query counter is bookkeeping, not part of the function.
        self.n == other.n && self.blocks == other.blocks
    }
}

impl Eq for BooleanOracle {}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(())
}

impl BooleanOracle {
    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_width(n)?;
        let len = 1usize << n;
        let mut blocks = vec![0u64; len.div_ceil(64)];
        for x in 0..len {
            if f(x) {
                blocks[x >> 6] |= 1 << (x & 63);
            }
        }
        Ok(BooleanOracle {
            n,
            blocks,
            queries: AtomicU64::new(0),
        })
    }

    pub fn from_bools(n: usize, table: &[bool]) -> Result<Self> {
        check_width(n)?;
        if table.len() != 1 << n {
            return Err(Error::TableLength {
                len: table.len(),
                n,
            });
        }
        Self::from_fn(n, |x| table[x])
    }

    /// Build from the truth table packed into an integer: bit `x` of `mask`
    /// is `f(x)`. Only available for n <= 6 (64 table entries).
    pub fn from_truth_mask(n: usize, mask: u64) -> Result<Self> {
        check_width(n)?;
        if n > 6 {
            return Err(Error::SweepTooLarge {
                n,
                limit: 6,
                what: "integer-packed truth tables",
            });
        }
        let len = 1usize << n;
        if len < 64 && mask >> len != 0 {
            return Err(Error::TableLength {
                len: 64 - mask.leading_zeros() as usize,
                n,
            });
        }
        Ok(BooleanOracle {
            n,
            blocks: vec![mask],
            queries: AtomicU64::new(0),
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// The search oracle: f(x) = 1 exactly on the marked indices.
    pub fn marking(n: usize, marked: &[usize]) -> Result<Self> {
        check_width(n)?;
        let len = 1usize << n;
        if let Some(&bad) = marked.iter().find(|&&x| x >= len) {
            return Err(Error::InvalidMarkedSet(format!(
                "index {bad} out of range for n={n}"
            )));
        }
        let mut oracle = Self::constant(n, false)?;
        for &x in marked {
            oracle.blocks[x >> 6] |= 1 << (x & 63);
        }
        Ok(oracle)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Counted black-box evaluation.
    pub fn query(&self, x: usize) -> bool {
        assert!(x < self.len(), "oracle input out of range");
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.read(x)
    }

    /// Uncounted table read for simulation and harness code.
    pub fn table_value(&self, x: usize) -> bool {
        assert!(x < self.len(), "oracle input out of range");
        self.read(x)
    }

    fn read(&self, x: usize) -> bool {
        (self.blocks[x >> 6] >> (x & 63)) & 1 == 1
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn count_ones(&self) -> usize {
        let mut total = 0usize;
        let len = self.len();
        for (i, block) in self.blocks.iter().enumerate() {
            let bits_here = (len - i * 64).min(64);
            let mask = if bits_here == 64 {
                u64::MAX
            } else {
                (1u64 << bits_here) - 1
            };
            total += (block & mask).count_ones() as usize;
        }
        total
    }

    /// Constant / balanced / neither, by popcount of the whole table.
    /// This is a harness-level inspection and does not count as a query.
    pub fn classify(&self) -> PromiseClass {
        let ones = self.count_ones();
        if ones == 0 || ones == self.len() {
            PromiseClass::Constant
        } else if ones * 2 == self.len() {
            PromiseClass::Balanced
        } else {
            PromiseClass::Neither
        }
    }

    /// Recover (c, a) if this table is exactly `x -> (a·x) ⊕ c`.
    pub fn identify_linear(&self) -> Option<LinearBooleanFunction> {
        let c = self.table_value(0);
        let mut a_value = 0u32;
        for pos in 0..self.n {
            let e = 1usize << (self.n - 1 - pos);
            if self.table_value(e) != c {
                a_value |= 1 << (self.n - 1 - pos);
            }
        }
        let a = Bits::new(a_value, self.n).expect("a fits in n bits");
        let candidate = LinearBooleanFunction::new(c, a);
        for x in 0..self.len() {
            if self.table_value(x) != candidate.evaluate(x) {
                return None;
            }
        }
        Some(candidate)
    }

    /// Truth table as '0'/'1' characters in index order.
    pub fn truth_string(&self) -> String {
        let mut s = String::with_capacity(self.len());
        for x in 0..self.len() {
            s.push(if self.table_value(x) { '1' } else { '0' });
        }
        s
    }

    /// Table packed into an integer; requires n <= 6.
    pub fn truth_mask(&self) -> u64 {
        assert!(self.n <= 6, "truth mask only defined for n <= 6");
        self.blocks[0]
    }

    /// Text form: a `n=<k>` header line, then the truth table characters.
    pub fn to_text(&self) -> String {
        format!("n={}\n{}\n", self.n, self.truth_string())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth-table text".into()))?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected n=<k> header, got {header:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad qubit count: {e}")))?;
        check_width(n)?;
        let row = lines
            .next()
            .ok_or_else(|| Error::Parse("missing truth-table row".into()))?
            .trim();
        if row.len() != 1 << n {
            return Err(Error::TableLength { len: row.len(), n });
        }
        let mut table = Vec::with_capacity(row.len());
        for ch in row.chars() {
            match ch {
                '0' => table.push(false),
                '1' => table.push(true),
                _ => return Err(Error::Parse(format!("invalid table character {ch:?}"))),
            }
        }
        Self::from_bools(n, &table)
    }
}

/// f(x) = (a · x) ⊕ c, the family of non-entangling phase oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearBooleanFunction {
    pub c: bool,
    pub a: Bits,
}

impl LinearBooleanFunction {
    pub fn new(c: bool, a: Bits) -> Self {
        LinearBooleanFunction { c, a }
    }

    pub fn n(&self) -> usize {
        self.a.width()
    }

    pub fn evaluate(&self, x: usize) -> bool {
        let masked = (self.a.value() as usize) & x;
        (masked.count_ones() % 2 == 1) ^ self.c
    }

    /// Expand to a full truth table.
    pub fn expand(&self) -> BooleanOracle {
        BooleanOracle::from_fn(self.n(), |x| self.evaluate(x)).expect("width already validated")
    }
}

/// Every (c, a) pair for the given width: 2^(n+1) functions, ordered by
/// (a, c) ascending.
pub fn enumerate_linear_family(n: usize) -> Result<impl Iterator<Item = LinearBooleanFunction>> {
    check_width(n)?;
    Ok(Bits::all(n).flat_map(|a| {
        [false, true]
            .into_iter()
            .map(move |c| LinearBooleanFunction::new(c, a))
    }))
}

/// Every constant and every balanced truth table for the given width, each
/// exactly once, in ascending packed-table order. Count = 2 + C(2^n, 2^(n-1)).
pub fn enumerate_promise_functions(n: usize) -> Result<Vec<BooleanOracle>> {
    check_width(n)?;
    if n > MAX_PROMISE_SWEEP {
        return Err(Error::SweepTooLarge {
            n,
            limit: MAX_PROMISE_SWEEP,
            what: "promise-function enumeration",
        });
    }
    let table_bits = 1u32 << n;
    let half = table_bits / 2;
    let mut out = Vec::new();
    for mask in 0..1u64 << table_bits {
        let ones = mask.count_ones();
        if ones == 0 || ones == table_bits || ones == half {
            out.push(BooleanOracle::from_truth_mask(n, mask)?);
        }
    }
    Ok(out)
}

/// A 2-to-1 vector-valued function with period `a`: f(x) = f(y) iff y = x⊕a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOracle {
    n: usize,
    a: Bits,
    table: Vec<Bits>,
}

impl VectorOracle {
    /// Canonical construction: cosets {x, x⊕a} are ranked by their smaller
    /// member in index order, and every x maps to its coset's rank.
    pub fn with_period(n: usize, a: Bits) -> Result<Self> {
        check_width(n)?;
        if a.width() != n {
            return Err(Error::DimensionMismatch {
                state: n,
                expected: a.width(),
            });
        }
        if a.is_zero() {
            return Err(Error::ZeroPeriod);
        }
        let len = 1usize << n;
        let mut table = vec![Bits::zero(n)?; len];
        let mut rank = 0u32;
        for x in 0..len {
            let partner = x ^ a.index();
            if x < partner {
                let label = Bits::new(rank, n)?;
                table[x] = label;
                table[partner] = label;
                rank += 1;
            }
        }
        Ok(VectorOracle { n, a, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> Bits {
        self.a
    }

    pub fn value(&self, x: usize) -> Bits {
        self.table[x]
    }

    pub fn table(&self) -> &[Bits] {
        &self.table
    }

    /// Table entries as basis indices, for feeding the standard oracle.
    pub fn raw_table(&self) -> Vec<usize> {
        self.table.iter().map(|b| b.index()).collect()
    }

    /// Text form: `n=<k> a=<bits>` header, then one n-bit string per input.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={} a={}\n", self.n, self.a);
        for entry in &self.table {
            let _ = writeln!(s, "{entry}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty oracle text".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .ok_or_else(|| Error::Parse(format!("expected n=<k> in header {header:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad qubit count: {e}")))?;
        let a: Bits = parts
            .next()
            .and_then(|p| p.strip_prefix("a="))
            .ok_or_else(|| Error::Parse(format!("expected a=<bits> in header {header:?}")))?
            .parse()?;
        check_width(n)?;
        if a.width() != n {
            return Err(Error::DimensionMismatch {
                state: n,
                expected: a.width(),
            });
        }
        if a.is_zero() {
            return Err(Error::ZeroPeriod);
        }
        let len = 1usize << n;
        let mut table = Vec::with_capacity(len);
        for line in lines.take(len) {
            table.push(line.trim().parse::<Bits>()?);
        }
        if table.len() != len {
            return Err(Error::TableLength {
                len: table.len(),
                n,
            });
        }
        let oracle = VectorOracle { n, a, table };
        oracle.validate()?;
        Ok(oracle)
    }

    /// Check 2-to-1 structure: f(x) = f(y) iff y = x⊕a.
    pub fn validate(&self) -> Result<()> {
        let len = 1usize << self.n;
        for x in 0..len {
            for y in (x + 1)..len {
                let same = self.table[x] == self.table[y];
                let partners = y == (x ^ self.a.index());
                if same != partners {
                    return Err(Error::Parse(format!(
                        "table is not 2-to-1 with the declared period at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A single-qubit diagonal gate diag(d0, d1) with entries ±1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagonalGate {
    pub d0: f64,
    pub d1: f64,
}

impl DiagonalGate {
    pub fn identity() -> Self {
        DiagonalGate { d0: 1.0, d1: 1.0 }
    }

    fn entry(&self, bit: bool) -> f64 {
        if bit {
            self.d1
        } else {
            self.d0
        }
    }
}

/// The phase oracle of a linear function split into purely local pieces: a
/// global sign and one diagonal gate per qubit.
#[derive(Clone, Debug, Serialize)]
pub struct LocalOracleFactorization {
    pub sign: f64,
    pub gates: Vec<DiagonalGate>,
}

impl LocalOracleFactorization {
    /// The phase the factorized oracle puts on basis state `x`.
    pub fn phase_on_basis(&self, x: usize) -> f64 {
        let n = self.gates.len();
        let mut phase = self.sign;
        for (pos, gate) in self.gates.iter().enumerate() {
            let bit = (x >> (n - 1 - pos)) & 1 == 1;
            phase *= gate.entry(bit);
        }
        phase
    }
}

/// Split the phase oracle of f(x) = (a·x)⊕c into the sign (−1)^c and the
/// per-qubit gates diag(1, (−1)^{a_k}); no two-qubit interaction is needed.
pub fn factor_oracle_local(f: &LinearBooleanFunction) -> LocalOracleFactorization {
    let sign = if f.c { -1.0 } else { 1.0 };
    let gates = (0..f.n())
        .map(|pos| DiagonalGate {
            d0: 1.0,
            d1: if f.a.get(pos) { -1.0 } else { 1.0 },
        })
        .collect();
    LocalOracleFactorization { sign, gates }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Bits {
        s.parse().unwrap()
    }

    fn table_of(oracle: &BooleanOracle) -> Vec<u8> {
        (0..oracle.len())
            .map(|x| oracle.table_value(x) as u8)
            .collect()
    }

    #[test]
    fn expand_constant_case() {
        let f = LinearBooleanFunction::new(true, bits("00"));
        assert_eq!(table_of(&f.expand()), vec![1, 1, 1, 1]);
    }

    #[test]
    fn expand_xor_of_two_bits() {
        let f = LinearBooleanFunction::new(false, bits("11"));
        assert_eq!(table_of(&f.expand()), vec![0, 1, 1, 0]);
    }

    #[test]
    fn expand_matches_direct_evaluation() {
        // Independent evaluation of (a·x)⊕c at every point for a=101, c=1.
        let f = LinearBooleanFunction::new(true, bits("101"));
        let mut expected = Vec::new();
        for x in 0..8usize {
            let x_bits = [(x >> 2) & 1, (x >> 1) & 1, x & 1];
            let a_bits = [1, 0, 1];
            let dot: usize = x_bits.iter().zip(a_bits).map(|(xb, ab)| xb * ab).sum();
            expected.push(((dot % 2) ^ 1) as u8);
        }
        assert_eq!(expected, vec![1, 0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(table_of(&f.expand()), expected);
    }

    #[test]
    fn classify_by_popcount() {
        let z = BooleanOracle::from_bools(2, &[false, false, false, false]).unwrap();
        assert_eq!(z.classify(), PromiseClass::Constant);
        let b = BooleanOracle::from_bools(2, &[false, true, true, false]).unwrap();
        assert_eq!(b.classify(), PromiseClass::Balanced);
        let x = BooleanOracle::from_bools(2, &[true, true, true, false]).unwrap();
        assert_eq!(x.classify(), PromiseClass::Neither);
    }

    #[test]
    fn classify_does_not_count_queries() {
        let f = BooleanOracle::constant(3, true).unwrap();
        f.classify();
        f.table_value(5);
        assert_eq!(f.query_count(), 0);
        f.query(5);
        assert_eq!(f.query_count(), 1);
    }

    #[test]
    fn identify_inverts_expand() {
        let f = BooleanOracle::from_bools(2, &[false, true, true, false]).unwrap();
        let lin = f.identify_linear().unwrap();
        assert_eq!(lin, LinearBooleanFunction::new(false, bits("11")));

        let g = BooleanOracle::from_bools(2, &[true; 4]).unwrap();
        let lin = g.identify_linear().unwrap();
        assert_eq!(lin, LinearBooleanFunction::new(true, bits("00")));
    }

    #[test]
    fn identify_rejects_and_function() {
        let and = BooleanOracle::from_bools(2, &[false, false, false, true]).unwrap();
        assert!(and.identify_linear().is_none());
        // AND disagrees with every one of the 8 linear candidates.
        for lin in enumerate_linear_family(2).unwrap() {
            assert_ne!(lin.expand(), and);
        }
    }

    #[test]
    fn linear_family_counts() {
        assert_eq!(enumerate_linear_family(1).unwrap().count(), 4);
        let family: Vec<_> = enumerate_linear_family(3).unwrap().collect();
        assert_eq!(family.len(), 16);
        let balanced = family
            .iter()
            .filter(|f| f.expand().classify() == PromiseClass::Balanced)
            .count();
        assert_eq!(balanced, 14); // 2·(2³−1)
    }

    #[test]
    fn promise_population_counts() {
        // 2 constants plus C(2^n, 2^(n-1)) balanced tables.
        fn binomial(n: u64, k: u64) -> u64 {
            let mut acc = 1u64;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        }
        for (n, expect) in [(2usize, 8u64), (3, 72), (4, 12872)] {
            let computed = 2 + binomial(1 << n, 1 << (n - 1));
            assert_eq!(computed, expect);
            let population = enumerate_promise_functions(n).unwrap();
            assert_eq!(population.len() as u64, expect);
            for f in &population {
                assert_ne!(f.classify(), PromiseClass::Neither);
            }
        }
        assert!(enumerate_promise_functions(5).is_err());
    }

    #[test]
    fn simon_oracle_canonical_labels() {
        let f = VectorOracle::with_period(2, bits("11")).unwrap();
        let labels: Vec<String> = f.table().iter().map(|b| b.to_string()).collect();
        assert_eq!(labels, vec!["00", "01", "01", "00"]);

        let g = VectorOracle::with_period(2, bits("01")).unwrap();
        let labels: Vec<String> = g.table().iter().map(|b| b.to_string()).collect();
        assert_eq!(labels, vec!["00", "00", "01", "01"]);

        assert!(VectorOracle::with_period(2, bits("00")).is_err());
    }

    #[test]
    fn simon_oracle_is_two_to_one() {
        for n in 2..=4usize {
            for a in Bits::all(n).skip(1) {
                let f = VectorOracle::with_period(n, a).unwrap();
                f.validate().unwrap();
                // Image size is 2^(n-1).
                let mut values: Vec<u32> = f.table().iter().map(|b| b.value()).collect();
                values.sort_unstable();
                values.dedup();
                assert_eq!(values.len(), 1 << (n - 1));
            }
        }
    }

    #[test]
    fn marking_oracle() {
        let f = BooleanOracle::marking(2, &[3]).unwrap();
        assert_eq!(table_of(&f), vec![0, 0, 0, 1]);
        let empty = BooleanOracle::marking(2, &[]).unwrap();
        assert_eq!(table_of(&empty), vec![0, 0, 0, 0]);
        let full = BooleanOracle::marking(3, &(0..8).collect::<Vec<_>>()).unwrap();
        assert_eq!(full.count_ones(), 8);
        assert!(BooleanOracle::marking(2, &[4]).is_err());
    }

    #[test]
    fn local_factorization_identity_oracle() {
        let f = LinearBooleanFunction::new(false, bits("00"));
        let local = factor_oracle_local(&f);
        assert_eq!(local.sign, 1.0);
        assert_eq!(local.gates, vec![DiagonalGate::identity(); 2]);
    }

    #[test]
    fn local_factorization_matches_phase_on_all_basis_states() {
        let f = LinearBooleanFunction::new(true, bits("10"));
        let local = factor_oracle_local(&f);
        assert_eq!(local.sign, -1.0);
        assert_eq!(local.gates[0], DiagonalGate { d0: 1.0, d1: -1.0 });
        assert_eq!(local.gates[1], DiagonalGate::identity());
        for x in 0..4usize {
            let expected = if f.evaluate(x) { -1.0 } else { 1.0 };
            assert_eq!(local.phase_on_basis(x), expected);
        }

        // Exhaustive for every linear function up to n = 10, exact equality.
        for n in 1..=10usize {
            for lin in enumerate_linear_family(n).unwrap() {
                let local = factor_oracle_local(&lin);
                for x in 0..1usize << n {
                    let expected = if lin.evaluate(x) { -1.0 } else { 1.0 };
                    assert_eq!(local.phase_on_basis(x), expected);
                }
            }
        }
    }

    #[test]
    fn truth_table_text_round_trip() {
        let f = BooleanOracle::from_bools(2, &[false, true, true, false]).unwrap();
        let text = f.to_text();
        assert_eq!(text, "n=2\n0110\n");
        let back = BooleanOracle::from_text(&text).unwrap();
        assert_eq!(back, f);
        assert!(BooleanOracle::from_text("n=2\n011\n").is_err());
        assert!(BooleanOracle::from_text("n=2\n01x0\n").is_err());
    }

    #[test]
    fn simon_text_round_trip() {
        let f = VectorOracle::with_period(2, bits("11")).unwrap();
        let text = f.to_text();
        assert_eq!(text, "n=2 a=11\n00\n01\n01\n00\n");
        let back = VectorOracle::from_text(&text).unwrap();
        assert_eq!(back, f);
        // A table that is not 2-to-1 with the declared period is rejected.
        assert!(VectorOracle::from_text("n=2 a=11\n00\n01\n10\n00\n").is_err());
    }

    #[test]
    fn truth_mask_round_trip() {
        for mask in [0u64, 0b0110, 0b1111, 0b1010] {
            let f = BooleanOracle::from_truth_mask(2, mask).unwrap();
            assert_eq!(f.truth_mask(), mask);
        }
        assert!(BooleanOracle::from_truth_mask(2, 0b10000).is_err());
    }
}
