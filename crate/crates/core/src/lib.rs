// SPDX-License-Identifier: Apache-2.0

//! Pure-state simulation and separability analysis for the classic quantum
//! oracle algorithms.
//!
//! The crate simulates the constant-versus-balanced decision circuit, period
//! finding over 2-to-1 oracles, and amplitude-amplification search on dense
//! state vectors, decides at every step whether the state is a tensor
//! product of single-qubit states, and sweeps entire oracle populations to
//! check which instances run without ever creating entanglement. Classical
//! query baselines make the quantum-versus-classical query counts directly
//! comparable.
//!
//! Modules follow the pipeline:
//!
//! * [`bits`], [`rng`] — bit strings and the seedable random source.
//! * [`state`] — dense state vectors, gates, oracles, measurement.
//! * [`oracle`] — truth tables, the linear family, vector oracles.
//! * [`separability`] — product decompositions and entanglement witnesses.
//! * [`algorithms`] — the three algorithm runners with per-step traces.
//! * [`classical`] — deterministic query baselines and the lower-bound
//!   certificate.
//! * [`propositions`] — exhaustive population sweeps with reports.
//! * [`sweep`] — deterministic parallel partitioning (rayon behind the
//!   `parallel` feature, sequential otherwise).

pub mod algorithms;
pub mod bits;
pub mod classical;
pub mod error;
pub mod oracle;
pub mod propositions;
pub mod rng;
pub mod separability;
pub mod state;
pub mod sweep;

pub use bits::Bits;
pub use error::{Error, Result};
pub use oracle::{BooleanOracle, LinearBooleanFunction, PromiseClass, VectorOracle};
pub use separability::{ProductDecomposition, SeparabilityVerdict};
pub use state::{MeasurementOutcome, StateVector};
