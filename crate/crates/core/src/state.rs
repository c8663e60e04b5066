// SPDX-License-Identifier: Apache-2.0

//! Dense pure-state vectors over 1..=24 qubits.
//!
//! Basis index `x` encodes the bit string x₁x₂…x_n with x₁ the most
//! significant bit, and qubits are numbered 0..n from that leftmost position.
//! States are immutable values: every operation returns a new state, so
//! states can be shared read-only across workers without locking.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;

/// Amplitude arrays are kept in memory, so 2^24 complex entries is the cap.
pub const MAX_QUBITS: usize = 24;

/// Norm slack accepted when validating externally supplied states.
pub const INPUT_NORM_TOL: f64 = 1e-6;

/// Norm slack the internal invariants are held to.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

/// Result of measuring a subset of qubits: the observed bits (in the order
/// the qubits were listed), the collapsed renormalized state over all qubits,
/// and the pre-measurement weight of the observed branch.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub bits: Bits,
    pub state: StateVector,
    pub probability: f64,
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount(n));
    }
    Ok(())
}

impl StateVector {
    /// The computational basis state |x⟩.
    pub fn basis(n: usize, x: usize) -> Result<Self> {
        check_qubit_count(n)?;
        if x >= 1 << n {
            return Err(Error::IndexOutOfRange { index: x, n });
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[x] = Complex64::ONE;
        Ok(StateVector { n, amps })
    }

    /// The uniform positive superposition over all basis states.
    pub fn uniform(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let len = 1usize << n;
        let amp = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        Ok(StateVector {
            n,
            amps: vec![amp; len],
        })
    }

    /// Wrap an externally supplied amplitude list. The list must have length
    /// 2^n for some 1 <= n <= 24 and unit norm within [`INPUT_NORM_TOL`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::AmplitudeLength { len, n: 0 });
        }
        let n = len.trailing_zeros() as usize;
        check_qubit_count(n)?;
        let state = StateVector { n, amps };
        state.check_norm(INPUT_NORM_TOL)?;
        Ok(state)
    }

    pub(crate) fn from_parts_unchecked(n: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        StateVector { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitude(&self, x: usize) -> Complex64 {
        self.amps[x]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probability(&self, x: usize) -> f64 {
        self.amps[x].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_norm(&self, tol: f64) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol {
            return Err(Error::Unnormalized { norm_sqr, tol });
        }
        Ok(())
    }

    /// Bit position (from the least significant end) of the given qubit.
    fn bit_shift(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.n {
            return Err(Error::QubitOutOfRange {
                qubit,
                n: self.n,
            });
        }
        Ok(self.n - 1 - qubit)
    }

    fn validate_subset(&self, qubits: &[usize]) -> Result<()> {
        let mut seen = 0u32;
        for &q in qubits {
            let shift = self.bit_shift(q)?;
            if seen >> shift & 1 == 1 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= 1 << shift;
        }
        Ok(())
    }

    /// Apply the 2x2 Hadamard to each listed qubit.
    pub fn hadamard_layer(&self, qubits: &[usize]) -> Result<Self> {
        self.validate_subset(qubits)?;
        let mut amps = self.amps.clone();
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        for &q in qubits {
            let step = 1usize << self.bit_shift(q)?;
            for base in (0..amps.len()).step_by(2 * step) {
                for offset in 0..step {
                    let lo = base + offset;
                    let hi = lo + step;
                    let a = amps[lo];
                    let b = amps[hi];
                    amps[lo] = scale * (a + b);
                    amps[hi] = scale * (a - b);
                }
            }
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// Multiply the amplitude of every x with f(x) = 1 by −1.
    pub fn apply_phase_oracle(&self, f: &BooleanOracle) -> Result<Self> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                state: self.n,
                expected: f.n(),
            });
        }
        let mut amps = self.amps.clone();
        for (x, amp) in amps.iter_mut().enumerate() {
            if f.table_value(x) {
                *amp = -*amp;
            }
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// The standard oracle |x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩ where x occupies the high
    /// `input_width` qubits and `table[x]` is f(x) over the remaining low
    /// qubits. A pure amplitude permutation: norm-preserving and self-inverse.
    pub fn apply_standard_oracle(&self, input_width: usize, table: &[usize]) -> Result<Self> {
        if input_width == 0 || input_width >= self.n {
            return Err(Error::DimensionMismatch {
                state: self.n,
                expected: input_width + 1,
            });
        }
        if table.len() != 1 << input_width {
            return Err(Error::TableLength {
                len: table.len(),
                n: input_width,
            });
        }
        let out_width = self.n - input_width;
        let out_size = 1usize << out_width;
        if let Some(&bad) = table.iter().find(|&&v| v >= out_size) {
            return Err(Error::OracleOutput {
                value: bad,
                width: out_width,
            });
        }
        let mut amps = self.amps.clone();
        for (x, &fx) in table.iter().enumerate() {
            if fx == 0 {
                continue;
            }
            let base = x << out_width;
            for y in 0..out_size {
                let y2 = y ^ fx;
                if y < y2 {
                    amps.swap(base | y, base | y2);
                }
            }
        }
        Ok(StateVector { n: self.n, amps })
    }

    /// Convenience for Boolean oracles acting on the single lowest qubit.
    pub fn apply_standard_boolean_oracle(&self, f: &BooleanOracle) -> Result<Self> {
        if f.n() + 1 != self.n {
            return Err(Error::DimensionMismatch {
                state: self.n,
                expected: f.n() + 1,
            });
        }
        let table: Vec<usize> = (0..f.len()).map(|x| f.table_value(x) as usize).collect();
        self.apply_standard_oracle(f.n(), &table)
    }

    /// Measure the listed qubits in the computational basis. The outcome is
    /// sampled from the Born rule using `rng`; the returned state is the
    /// collapsed, renormalized branch over all qubits.
    pub fn measure_subset(&self, qubits: &[usize], rng: &mut impl Rng) -> Result<MeasurementOutcome> {
        if qubits.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.validate_subset(qubits)?;
        self.check_norm(INPUT_NORM_TOL)?;

        let shifts: Vec<usize> = qubits
            .iter()
            .map(|&q| self.bit_shift(q).expect("validated"))
            .collect();
        let k = qubits.len();
        // Outcome o collects the listed qubits' bits in listing order,
        // leftmost listed qubit most significant.
        let outcome_of = |x: usize| -> usize {
            let mut o = 0usize;
            for &shift in &shifts {
                o = (o << 1) | ((x >> shift) & 1);
            }
            o
        };

        let mut weights = vec![0.0f64; 1 << k];
        for (x, amp) in self.amps.iter().enumerate() {
            weights[outcome_of(x)] += amp.norm_sqr();
        }

        let draw: f64 = rng.random();
        let mut cumulative = 0.0;
        let mut chosen = (1usize << k) - 1;
        for (o, &w) in weights.iter().enumerate() {
            cumulative += w;
            if draw < cumulative {
                chosen = o;
                break;
            }
        }
        // Guard against an all-zero tail from rounding: fall back to the
        // heaviest outcome.
        if weights[chosen] <= 0.0 {
            chosen = weights
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(o, _)| o)
                .unwrap_or(0);
        }

        let probability = weights[chosen];
        let scale = 1.0 / probability.sqrt();
        let amps: Vec<Complex64> = self
            .amps
            .iter()
            .enumerate()
            .map(|(x, amp)| {
                if outcome_of(x) == chosen {
                    amp * scale
                } else {
                    Complex64::ZERO
                }
            })
            .collect();

        Ok(MeasurementOutcome {
            bits: Bits::new(chosen as u32, k)?,
            state: StateVector { n: self.n, amps },
            probability,
        })
    }

    /// Tensor product with `other` appended as the low-order qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n = self.n + other.n;
        check_qubit_count(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { n, amps })
    }
}

/// Serialize in the state-file text format: first line `n`, then 2^n lines
/// of `re im` in index order.
pub fn write_state_text(state: &StateVector) -> String {
    let mut out = format!("{}\n", state.n());
    for amp in state.amplitudes() {
        out.push_str(&format!("{} {}\n", amp.re, amp.im));
    }
    out
}

/// Parse the state-file text format.
pub fn read_state_text(text: &str) -> Result<StateVector> {
    let mut lines = text.lines();
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty state file".into()))?
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad qubit count: {e}")))?;
    check_qubit_count(n)?;
    let len = 1usize << n;
    let mut amps = Vec::with_capacity(len);
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if amps.len() == len {
            return Err(Error::Parse(format!("extra amplitude line {}", i + 2)));
        }
        let mut parts = line.split_whitespace();
        let re: f64 = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("missing re on line {}", i + 2)))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad re on line {}: {e}", i + 2)))?;
        let im: f64 = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("missing im on line {}", i + 2)))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad im on line {}: {e}", i + 2)))?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens on line {}", i + 2)));
        }
        amps.push(Complex64::new(re, im));
    }
    if amps.len() != len {
        return Err(Error::AmplitudeLength {
            len: amps.len(),
            n,
        });
    }
    StateVector::from_amplitudes(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn assert_close(state: &StateVector, expected: &[Complex64], tol: f64) {
        assert_eq!(state.len(), expected.len());
        for (x, (got, want)) in state.amplitudes().iter().zip(expected).enumerate() {
            assert!(
                (got - want).norm() <= tol,
                "amplitude {x}: got {got}, want {want}"
            );
        }
    }

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn basis_state_construction() {
        let s = StateVector::basis(1, 0).unwrap();
        assert_close(&s, &[re(1.0), re(0.0)], 0.0);
        let s = StateVector::basis(2, 3).unwrap();
        assert_close(&s, &[re(0.0), re(0.0), re(0.0), re(1.0)], 0.0);
        assert!(matches!(
            StateVector::basis(3, 8),
            Err(Error::IndexOutOfRange { index: 8, n: 3 })
        ));
        assert!(StateVector::basis(0, 0).is_err());
        assert!(StateVector::basis(25, 0).is_err());
    }

    #[test]
    fn hadamard_layer_uniform() {
        let s = StateVector::basis(2, 0).unwrap();
        let h = s.hadamard_layer(&[0, 1]).unwrap();
        assert_close(&h, &[re(0.5); 4], 1e-15);
    }

    #[test]
    fn hadamard_on_minus_gives_one() {
        // |−⟩⊗|0⟩ has amplitudes [1/√2, 0, −1/√2, 0]; H on qubit 0 → |10⟩.
        let s = StateVector::from_amplitudes(vec![
            re(FRAC_1_SQRT_2),
            re(0.0),
            re(-FRAC_1_SQRT_2),
            re(0.0),
        ])
        .unwrap();
        let h = s.hadamard_layer(&[0]).unwrap();
        assert_close(&h, &[re(0.0), re(0.0), re(1.0), re(0.0)], 1e-15);
    }

    #[test]
    fn hadamard_layer_is_involution() {
        let mut rng = seeded(11);
        let amps: Vec<Complex64> = (0..8)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<Complex64> = amps.into_iter().map(|a| a / norm).collect();
        let s = StateVector::from_amplitudes(amps).unwrap();
        let twice = s
            .hadamard_layer(&[0, 1, 2])
            .unwrap()
            .hadamard_layer(&[0, 1, 2])
            .unwrap();
        assert_close(&twice, s.amplitudes(), 1e-12);
    }

    #[test]
    fn hadamard_rejects_bad_subset() {
        let s = StateVector::basis(2, 0).unwrap();
        assert!(s.hadamard_layer(&[2]).is_err());
        assert!(s.hadamard_layer(&[0, 0]).is_err());
    }

    #[test]
    fn phase_oracle_examples() {
        let f0 = BooleanOracle::constant(2, false).unwrap();
        let s = StateVector::uniform(2).unwrap();
        assert_eq!(s.apply_phase_oracle(&f0).unwrap(), s);

        let mark3 = BooleanOracle::marking(2, &[3]).unwrap();
        let t = s.apply_phase_oracle(&mark3).unwrap();
        assert_close(&t, &[re(0.5), re(0.5), re(0.5), re(-0.5)], 0.0);

        // Applying the same oracle twice restores the state exactly.
        assert_eq!(t.apply_phase_oracle(&mark3).unwrap(), s);

        let wrong = BooleanOracle::constant(3, false).unwrap();
        assert!(s.apply_phase_oracle(&wrong).is_err());
    }

    #[test]
    fn standard_oracle_identity_and_cnot() {
        let s = StateVector::basis(2, 2).unwrap(); // |1⟩|0⟩
        let id = s.apply_standard_oracle(1, &[0, 0]).unwrap();
        assert_eq!(id, s);

        // f(x) = x acts as CNOT: |1⟩|0⟩ → |1⟩|1⟩.
        let t = s.apply_standard_oracle(1, &[0, 1]).unwrap();
        assert_close(&t, &[re(0.0), re(0.0), re(0.0), re(1.0)], 0.0);

        assert!(s.apply_standard_oracle(1, &[0, 2]).is_err());
        assert!(s.apply_standard_oracle(2, &[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn measure_basis_state_is_certain() {
        let s = StateVector::basis(2, 1).unwrap(); // |01⟩
        let outcome = s.measure_subset(&[0, 1], &mut seeded(0)).unwrap();
        assert_eq!(outcome.bits.to_string(), "01");
        assert!((outcome.probability - 1.0).abs() < 1e-12);
        assert_eq!(outcome.state, s);
    }

    #[test]
    fn measure_bell_collapses_partner() {
        let bell = StateVector::from_amplitudes(vec![
            re(FRAC_1_SQRT_2),
            re(0.0),
            re(0.0),
            re(FRAC_1_SQRT_2),
        ])
        .unwrap();
        for seed in 0..32 {
            let outcome = bell.measure_subset(&[0], &mut seeded(seed)).unwrap();
            assert!((outcome.probability - 0.5).abs() < 1e-12);
            let expect = if outcome.bits.get(0) {
                StateVector::basis(2, 3).unwrap()
            } else {
                StateVector::basis(2, 0).unwrap()
            };
            assert_close(&outcome.state, expect.amplitudes(), 1e-12);
        }
    }

    #[test]
    fn measure_rejects_bad_input() {
        let s = StateVector::basis(2, 0).unwrap();
        assert!(s.measure_subset(&[], &mut seeded(0)).is_err());
        let bad = StateVector {
            n: 1,
            amps: vec![re(1.0), re(0.5)],
        };
        assert!(matches!(
            bad.measure_subset(&[0], &mut seeded(0)),
            Err(Error::Unnormalized { .. })
        ));
    }

    #[test]
    fn measurement_is_deterministic_given_seed() {
        let s = StateVector::uniform(3).unwrap();
        let a = s.measure_subset(&[0, 2], &mut seeded(42)).unwrap();
        let b = s.measure_subset(&[0, 2], &mut seeded(42)).unwrap();
        assert_eq!(a.bits, b.bits);
        assert_eq!(a.state, b.state);
    }

    #[test]
    fn tensor_product_layout() {
        let plus = StateVector::basis(1, 0).unwrap().hadamard_layer(&[0]).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        let combined = plus.tensor(&one).unwrap();
        assert_close(
            &combined,
            &[re(0.0), re(FRAC_1_SQRT_2), re(0.0), re(FRAC_1_SQRT_2)],
            1e-15,
        );
    }

    #[test]
    fn state_text_round_trip() {
        let bell = StateVector::from_amplitudes(vec![
            re(FRAC_1_SQRT_2),
            re(0.0),
            re(0.0),
            Complex64::new(0.0, FRAC_1_SQRT_2),
        ])
        .unwrap();
        let text = write_state_text(&bell);
        let back = read_state_text(&text).unwrap();
        assert_eq!(back, bell);

        assert!(read_state_text("").is_err());
        assert!(read_state_text("1\n1 0\n").is_err()); // missing a line
        assert!(read_state_text("1\n1 0\n0 0\n0 0\n").is_err()); // extra line
        assert!(read_state_text("1\n0.9 0\n0 0\n").is_err()); // unnormalized
    }
}
