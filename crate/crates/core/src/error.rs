// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::bits::MAX_BIT_WIDTH;
use crate::state::MAX_QUBITS;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={MAX_QUBITS}")]
    QubitCount(usize),

    #[error("basis index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("qubit {qubit} out of range for {n}-qubit state")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("measurement subset is empty")]
    EmptySubset,

    #[error("dimension mismatch: state has {state} qubits, operand expects {expected}")]
    DimensionMismatch { state: usize, expected: usize },

    #[error("state norm² = {norm_sqr} deviates from 1 beyond tolerance {tol}")]
    Unnormalized { norm_sqr: f64, tol: f64 },

    #[error("amplitude list length {len} is not a power of two matching n={n}")]
    AmplitudeLength { len: usize, n: usize },

    #[error("truth table length {len} does not equal 2^{n}")]
    TableLength { len: usize, n: usize },

    #[error("oracle output {value} out of range for {width} output bits")]
    OracleOutput { value: usize, width: usize },

    #[error("period must be a non-zero bit string")]
    ZeroPeriod,

    #[error("oracle violates the constant-or-balanced promise")]
    PromiseViolation,

    #[error("marked set invalid: {0}")]
    InvalidMarkedSet(String),

    #[error("n = {n} exceeds the limit {limit} for {what}")]
    SweepTooLarge {
        n: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("n = {n} unsupported here; expected {expected}")]
    Unsupported { n: usize, expected: &'static str },

    #[error("bit width {0} outside supported range 1..={MAX_BIT_WIDTH}")]
    BitWidth(usize),

    #[error("value {value} does not fit in {width} bits")]
    BitValue { value: u32, width: usize },

    #[error("bit position {pos} out of range for width {width}")]
    BitPosition { pos: usize, width: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
