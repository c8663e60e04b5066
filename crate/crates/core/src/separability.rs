// SPDX-License-Identifier: Apache-2.0

//! Deciding whether a pure state is a tensor product of single-qubit states.
//!
//! A pure state factors completely iff it factors across every single-qubit
//! cut, so the analyzer checks, per qubit, that the 2 x 2^(n-1) matrix
//! (qubit against the rest) has rank one: every 2x2 minor against the
//! heaviest column must vanish within tolerance. On success the per-qubit
//! factors are read off the heaviest columns; on failure the offending minor
//! is reported as a witness that can be recomputed from the input state.
//!
//! All tolerances are interpreted on unit-norm states, which keeps them
//! scale-free.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::oracle::LinearBooleanFunction;
use crate::state::{StateVector, INPUT_NORM_TOL};

/// Default amplitude tolerance for separability decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// One qubit's factor cosθ|0⟩ + e^{iφ} sinθ|1⟩ with θ in [0, π/2] and φ in
/// [0, 2π). When θ is exactly 0 or π/2 the phase is fixed to 0.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QubitFactor {
    pub theta: f64,
    pub phi: f64,
}

impl QubitFactor {
    pub fn amplitude(&self, bit: bool) -> Complex64 {
        if bit {
            Complex64::from_polar(self.theta.sin(), self.phi)
        } else {
            Complex64::new(self.theta.cos(), 0.0)
        }
    }
}

/// A full product decomposition: global phase plus one factor per qubit.
#[derive(Clone, Debug, Serialize)]
pub struct ProductDecomposition {
    pub global_phase: f64,
    pub factors: Vec<QubitFactor>,
}

impl ProductDecomposition {
    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// Uniformly random decomposition; reconstructing it yields a state that
    /// is separable by construction.
    pub fn sample(n: usize, rng: &mut impl Rng) -> Self {
        let factors = (0..n)
            .map(|_| QubitFactor {
                theta: rng.random::<f64>() * FRAC_PI_2,
                phi: rng.random::<f64>() * TAU,
            })
            .collect();
        ProductDecomposition {
            global_phase: rng.random::<f64>() * TAU,
            factors,
        }
    }
}

/// Evidence of entanglement: a 2x2 minor of the qubit-vs-rest matrix whose
/// magnitude exceeds the tolerance. `i` carries bit 0 and `j` bit 1 on the
/// named qubit; the minor is |ψ(i)ψ(j) − ψ(i∨m)ψ(j∧¬m)| for that qubit's
/// index mask m.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EntanglementWitness {
    pub qubit: usize,
    pub i: usize,
    pub j: usize,
    pub minor: f64,
}

impl EntanglementWitness {
    /// Recompute the witnessed minor magnitude from a state.
    pub fn recompute(&self, state: &StateVector) -> Result<f64> {
        let n = state.n();
        if self.qubit >= n {
            return Err(Error::QubitOutOfRange {
                qubit: self.qubit,
                n,
            });
        }
        if let Some(&index) = [self.i, self.j].iter().find(|&&x| x >= state.len()) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mask = 1usize << (n - 1 - self.qubit);
        let minor = state.amplitude(self.i) * state.amplitude(self.j)
            - state.amplitude(self.i | mask) * state.amplitude(self.j & !mask);
        Ok(minor.norm())
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SeparabilityVerdict {
    Separable {
        tolerance: f64,
        #[serde(flatten)]
        decomposition: ProductDecomposition,
    },
    Entangled {
        tolerance: f64,
        witness: EntanglementWitness,
    },
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable { .. })
    }

    pub fn decomposition(&self) -> Option<&ProductDecomposition> {
        match self {
            SeparabilityVerdict::Separable { decomposition, .. } => Some(decomposition),
            SeparabilityVerdict::Entangled { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&EntanglementWitness> {
        match self {
            SeparabilityVerdict::Separable { .. } => None,
            SeparabilityVerdict::Entangled { witness, .. } => Some(witness),
        }
    }
}

fn normalize_angle(x: f64) -> f64 {
    let a = x.rem_euclid(TAU);
    if a == TAU {
        0.0
    } else {
        a
    }
}

/// Circular distance between two angles.
pub(crate) fn angle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

fn ensure_normalized(state: &StateVector) -> Result<()> {
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - 1.0).abs() > INPUT_NORM_TOL {
        return Err(Error::Unnormalized {
            norm_sqr,
            tol: INPUT_NORM_TOL,
        });
    }
    Ok(())
}

/// Canonical (θ, φ) for a normalized single-qubit pair, snapping to the
/// basis poles (with φ = 0) when one component is below tolerance.
fn canonical_factor(v0: Complex64, v1: Complex64, tol: f64) -> QubitFactor {
    let m0 = v0.norm();
    let m1 = v1.norm();
    if m1 <= tol {
        QubitFactor {
            theta: 0.0,
            phi: 0.0,
        }
    } else if m0 <= tol {
        QubitFactor {
            theta: FRAC_PI_2,
            phi: 0.0,
        }
    } else {
        QubitFactor {
            theta: m1.atan2(m0),
            phi: normalize_angle(v1.arg() - v0.arg()),
        }
    }
}

/// Decide separability of a pure state within `tol`, producing either a
/// product decomposition or an entanglement witness.
pub fn factor_state(state: &StateVector, tol: f64) -> Result<SeparabilityVerdict> {
    ensure_normalized(state)?;
    let n = state.n();
    let amps = state.amplitudes();
    let mut factors = Vec::with_capacity(n);

    for qubit in 0..n {
        let mask = 1usize << (n - 1 - qubit);

        // Heaviest column of the 2 x 2^(n-1) view for this qubit.
        let mut dominant = usize::MAX;
        let mut dominant_weight = -1.0;
        for i0 in (0..amps.len()).filter(|x| x & mask == 0) {
            let w = amps[i0].norm_sqr() + amps[i0 | mask].norm_sqr();
            if w > dominant_weight {
                dominant_weight = w;
                dominant = i0;
            }
        }
        let d0 = amps[dominant];
        let d1 = amps[dominant | mask];

        // Rank-one check: every column must be proportional to the heaviest.
        for i0 in (0..amps.len()).filter(|x| x & mask == 0) {
            if i0 == dominant {
                continue;
            }
            let minor = amps[i0] * d1 - d0 * amps[i0 | mask];
            if minor.norm() > tol {
                return Ok(SeparabilityVerdict::Entangled {
                    tolerance: tol,
                    witness: EntanglementWitness {
                        qubit,
                        i: i0,
                        j: dominant | mask,
                        minor: minor.norm(),
                    },
                });
            }
        }

        let scale = dominant_weight.sqrt();
        factors.push(canonical_factor(d0 / scale, d1 / scale, tol));
    }

    // Residual phases land in the global phase, read off at the heaviest
    // basis amplitude where the factor product cannot vanish.
    let x_star = (0..amps.len())
        .max_by(|&a, &b| amps[a].norm_sqr().total_cmp(&amps[b].norm_sqr()))
        .expect("nonempty amplitude array");
    let mut product = Complex64::ONE;
    for (qubit, factor) in factors.iter().enumerate() {
        let bit = (x_star >> (n - 1 - qubit)) & 1 == 1;
        product *= factor.amplitude(bit);
    }
    debug_assert!(product.norm() > 0.0);
    let global_phase = normalize_angle(amps[x_star].arg() - product.arg());

    Ok(SeparabilityVerdict::Separable {
        tolerance: tol,
        decomposition: ProductDecomposition {
            global_phase,
            factors,
        },
    })
}

/// Rebuild the full state from a product decomposition.
pub fn reconstruct(d: &ProductDecomposition) -> StateVector {
    let mut amps = vec![Complex64::from_polar(1.0, d.global_phase)];
    for factor in &d.factors {
        let f0 = factor.amplitude(false);
        let f1 = factor.amplitude(true);
        let mut next = Vec::with_capacity(amps.len() * 2);
        for a in &amps {
            next.push(a * f0);
            next.push(a * f1);
        }
        amps = next;
    }
    StateVector::from_parts_unchecked(d.n(), amps)
}

/// Read (c, a) off a state of the form (−1)^c 2^{−n/2} ⊗(|0⟩+(−1)^{a_k}|1⟩):
/// every θ must be π/4, every φ and the global phase 0 or π, all within
/// `tol`. Any other state yields `None`.
pub fn extract_linear_from_state(
    state: &StateVector,
    tol: f64,
) -> Result<Option<LinearBooleanFunction>> {
    let verdict = factor_state(state, tol)?;
    let Some(decomposition) = verdict.decomposition() else {
        return Ok(None);
    };

    let mut a_value = 0u32;
    let n = state.n();
    for (qubit, factor) in decomposition.factors.iter().enumerate() {
        if (factor.theta - FRAC_PI_4).abs() > tol {
            return Ok(None);
        }
        if angle_distance(factor.phi, PI) <= tol {
            a_value |= 1 << (n - 1 - qubit);
        } else if angle_distance(factor.phi, 0.0) > tol {
            return Ok(None);
        }
    }

    let c = if angle_distance(decomposition.global_phase, PI) <= tol {
        true
    } else if angle_distance(decomposition.global_phase, 0.0) <= tol {
        false
    } else {
        return Ok(None);
    };

    let a = Bits::new(a_value, n).expect("a fits in n bits");
    Ok(Some(LinearBooleanFunction::new(c, a)))
}

/// The two-qubit separability constraint AD = BC on amplitudes
/// (A, B, C, D) = (ψ(00), ψ(01), ψ(10), ψ(11)). Returns whether the
/// constraint holds within `tol` together with the residual |AD − BC|.
pub fn check_two_qubit_constraint(state: &StateVector, tol: f64) -> Result<(bool, f64)> {
    if state.n() != 2 {
        return Err(Error::DimensionMismatch {
            state: state.n(),
            expected: 2,
        });
    }
    let a = state.amplitude(0);
    let b = state.amplitude(1);
    let c = state.amplitude(2);
    let d = state.amplitude(3);
    let residual = (a * d - b * c).norm();
    Ok((residual <= tol, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::BooleanOracle;
    use crate::rng::seeded;
    
    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn bell() -> StateVector {
        StateVector::from_amplitudes(vec![
            re(FRAC_1_SQRT_2),
            re(0.0),
            re(0.0),
            re(FRAC_1_SQRT_2),
        ])
        .unwrap()
    }

    fn max_amp_deviation(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn bell_state_is_entangled_with_half_minor() {
        let verdict = factor_state(&bell(), DEFAULT_TOL).unwrap();
        let witness = verdict.witness().expect("entangled");
        assert_eq!(witness.qubit, 0);
        assert!((witness.minor - 0.5).abs() < 1e-12);
        let recomputed = witness.recompute(&bell()).unwrap();
        assert!((recomputed - witness.minor).abs() < 1e-15);
    }

    #[test]
    fn explicit_product_factors() {
        // |+⟩ ⊗ |0⟩ ⊗ |−⟩
        let plus = StateVector::basis(1, 0).unwrap().hadamard_layer(&[0]).unwrap();
        let zero = StateVector::basis(1, 0).unwrap();
        let minus = StateVector::basis(1, 1).unwrap().hadamard_layer(&[0]).unwrap();
        let state = plus.tensor(&zero).unwrap().tensor(&minus).unwrap();

        let verdict = factor_state(&state, DEFAULT_TOL).unwrap();
        let d = verdict.decomposition().expect("separable");
        let thetas: Vec<f64> = d.factors.iter().map(|f| f.theta).collect();
        let phis: Vec<f64> = d.factors.iter().map(|f| f.phi).collect();
        assert!((thetas[0] - FRAC_PI_4).abs() < 1e-12);
        assert!(thetas[1].abs() < 1e-12);
        assert!((thetas[2] - FRAC_PI_4).abs() < 1e-12);
        assert!(phis[0].abs() < 1e-12);
        assert!(phis[1].abs() < 1e-12); // forced to 0 at the pole
        assert!((phis[2] - PI).abs() < 1e-12);

        let rebuilt = reconstruct(d);
        assert!(max_amp_deviation(&state, &rebuilt) < 1e-12);
    }

    #[test]
    fn dj_oracle_state_matches_product_form() {
        // Post-oracle register for c=1, a=10 on two qubits, built by
        // simulation and compared against the explicit product form.
        let f = LinearBooleanFunction::new(true, "10".parse().unwrap());
        let state = StateVector::uniform(2)
            .unwrap()
            .apply_phase_oracle(&f.expand())
            .unwrap();

        // Independent construction: −(|0⟩−|1⟩)(|0⟩+|1⟩)/2.
        let top = StateVector::from_amplitudes(vec![re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2)]).unwrap();
        let bottom = StateVector::from_amplitudes(vec![re(FRAC_1_SQRT_2), re(FRAC_1_SQRT_2)]).unwrap();
        let product = top.tensor(&bottom).unwrap();
        let negated =
            StateVector::from_amplitudes(product.amplitudes().iter().map(|a| -a).collect())
                .unwrap();
        assert!(max_amp_deviation(&state, &negated) < 1e-15);

        let verdict = factor_state(&state, DEFAULT_TOL).unwrap();
        let d = verdict.decomposition().expect("separable");
        // φ encodes (−1)^{a_k}: a = 10 puts the π on qubit 0.
        assert!(angle_distance(d.factors[0].phi, PI) < 1e-12);
        assert!(angle_distance(d.factors[1].phi, 0.0) < 1e-12);
        assert!(angle_distance(d.global_phase, PI) < 1e-12);
    }

    #[test]
    fn reconstruct_basis_and_minus() {
        let d = ProductDecomposition {
            global_phase: 0.0,
            factors: vec![
                QubitFactor {
                    theta: 0.0,
                    phi: 0.0,
                };
                3
            ],
        };
        let state = reconstruct(&d);
        assert!(max_amp_deviation(&state, &StateVector::basis(3, 0).unwrap()) < 1e-15);

        let d = ProductDecomposition {
            global_phase: 0.0,
            factors: vec![QubitFactor {
                theta: FRAC_PI_4,
                phi: PI,
            }],
        };
        let minus = reconstruct(&d);
        let expected =
            StateVector::from_amplitudes(vec![re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2)]).unwrap();
        assert!(max_amp_deviation(&minus, &expected) < 1e-15);
    }

    #[test]
    fn factor_round_trip_on_random_products() {
        let mut rng = seeded(5);
        for _ in 0..50 {
            let n = 1 + (rng.random::<u32>() as usize % 8);
            let d = ProductDecomposition::sample(n, &mut rng);
            let state = reconstruct(&d);
            let verdict = factor_state(&state, DEFAULT_TOL).unwrap();
            let rebuilt = reconstruct(verdict.decomposition().expect("separable"));
            assert!(
                max_amp_deviation(&state, &rebuilt) < 1e-8,
                "round trip drifted at n={n}"
            );
        }
    }

    #[test]
    fn extract_linear_cases() {
        // Simulated post-oracle register for (c=0, a=101).
        let lin = LinearBooleanFunction::new(false, "101".parse().unwrap());
        let state = StateVector::uniform(3)
            .unwrap()
            .apply_phase_oracle(&lin.expand())
            .unwrap();
        let found = extract_linear_from_state(&state, DEFAULT_TOL).unwrap();
        assert_eq!(found, Some(lin));

        // Uniform positive superposition is the constant-0 case.
        let uniform = StateVector::uniform(2).unwrap();
        let found = extract_linear_from_state(&uniform, DEFAULT_TOL).unwrap();
        assert_eq!(
            found,
            Some(LinearBooleanFunction::new(false, "00".parse().unwrap()))
        );

        // The AND function's post-oracle register is entangled.
        let and = BooleanOracle::from_bools(2, &[false, false, false, true]).unwrap();
        let state = StateVector::uniform(2)
            .unwrap()
            .apply_phase_oracle(&and)
            .unwrap();
        assert_eq!(extract_linear_from_state(&state, DEFAULT_TOL).unwrap(), None);
    }

    #[test]
    fn two_qubit_constraint_cases() {
        let mark3 = BooleanOracle::marking(2, &[3]).unwrap();
        let psi2 = StateVector::uniform(2)
            .unwrap()
            .apply_phase_oracle(&mark3)
            .unwrap();
        let (ok, residual) = check_two_qubit_constraint(&psi2, DEFAULT_TOL).unwrap();
        assert!(!ok);
        assert!((residual - 0.5).abs() < 1e-12);

        let basis = StateVector::basis(2, 0).unwrap();
        let (ok, residual) = check_two_qubit_constraint(&basis, DEFAULT_TOL).unwrap();
        assert!(ok);
        assert_eq!(residual, 0.0);

        // Marked set {01, 10} is the a=11 linear function: separable.
        let f = BooleanOracle::marking(2, &[1, 2]).unwrap();
        let psi2 = StateVector::uniform(2).unwrap().apply_phase_oracle(&f).unwrap();
        let (ok, _) = check_two_qubit_constraint(&psi2, DEFAULT_TOL).unwrap();
        assert!(ok);

        assert!(check_two_qubit_constraint(&StateVector::basis(3, 0).unwrap(), DEFAULT_TOL).is_err());
    }

    #[test]
    fn constraint_agrees_with_factor_state() {
        let mut rng = seeded(17);
        for _ in 0..500 {
            let amps: Vec<Complex64> = (0..4)
                .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let state =
                StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap();
            let (ok, _) = check_two_qubit_constraint(&state, DEFAULT_TOL).unwrap();
            let verdict = factor_state(&state, DEFAULT_TOL).unwrap();
            assert_eq!(ok, verdict.is_separable());
        }
    }

    #[test]
    fn rejects_unnormalized_input() {
        let state = StateVector::basis(2, 0).unwrap();
        let doubled =
            StateVector::from_parts_unchecked(2, state.amplitudes().iter().map(|a| a * 2.0).collect());
        assert!(matches!(
            factor_state(&doubled, DEFAULT_TOL),
            Err(Error::Unnormalized { .. })
        ));
    }
}
