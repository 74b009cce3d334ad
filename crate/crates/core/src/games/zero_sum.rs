//! Zero-sum game on two shared entangled pairs, with and without a payoff register.
//!
//! Each player contributes a strategy qubit `U|0⟩ = x|0⟩ + y|1⟩` and an
//! ancilla in `|+⟩`. `U_AB` turns A's `(a, b)` and B's `(c, d)` into
//! `(a|00⟩ + b|11⟩)_13 ⊗ (c|00⟩ + d|11⟩)_24`. A wins when qubits 1 and 2
//! agree; B wins when qubits 3 and 4 differ.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{check_range, Error, Result};
use crate::gates::{named_gate, NamedGate, Strategy};
use crate::matrix::UnitaryMatrix;
use crate::state::{make_state, outcome_probabilities, ProbabilityMap, StateVector};

use super::payoff::{GameResult, PayoffCoding};

/// Tolerance for agreement between the simulated and closed-form results.
pub const CONSISTENCY_TOL: f64 = 1e-12;

/// `U|0⟩ = (x, y)` for a player's move.
pub fn move_amplitudes(s: &Strategy) -> (Complex64, Complex64) {
    let u = s.unitary();
    (u.get(0, 0), u.get(1, 0))
}

fn circuit() -> Circuit {
    let h = named_gate(NamedGate::H);
    let cnot = named_gate(NamedGate::Cnot);
    Circuit::new(4)
        .expect("4 qubits")
        .push(h.clone(), &[2])
        .push(h, &[4])
        .push(named_gate(NamedGate::Swap), &[2, 3])
        .push(cnot.clone(), &[2, 4])
        .push(cnot, &[1, 3])
}

/// `CNOT(1→3) · CNOT(2→4) · SWAP(2,3) · (I⊗H⊗I⊗H)`.
pub fn zero_sum_uab() -> &'static UnitaryMatrix {
    static UAB: OnceLock<UnitaryMatrix> = OnceLock::new();
    UAB.get_or_init(|| circuit().unitary().expect("Clifford circuit is unitary"))
}

/// `(x|0⟩ + y|1⟩) ⊗ |+⟩`.
fn player_input(x: Complex64, y: Complex64) -> Result<StateVector> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    StateVector::normalized(vec![x, y])?.kron(&StateVector::normalized(vec![h, h])?)
}

/// `ac|0000⟩ + bc|1010⟩ + ad|0101⟩ + bd|1111⟩`.
pub fn shared_pairs_state(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 16];
    amps[0b0000] = a * c;
    amps[0b1010] = b * c;
    amps[0b0101] = a * d;
    amps[0b1111] = b * d;
    StateVector::new(amps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumOutcome {
    /// Probability that A wins (qubits 1, 2 agree), from the simulated state.
    pub p_a: f64,
    /// Probability that B wins (qubits 3, 4 differ), from the simulated state.
    pub p_b: f64,
    /// `1 − (|a|² − 2|a|²|c|² + |c|²)`.
    pub p_a_formula: f64,
    /// `|a|²`, A's probability of staying on `|0⟩`.
    pub a_weight: f64,
    /// `|c|²`, B's probability of staying on `|0⟩`.
    pub c_weight: f64,
    pub final_state: StateVector,
}

/// `1 − (|a|² − 2|a|²|c|² + |c|²)`.
pub fn win_probability_formula(a_weight: f64, c_weight: f64) -> f64 {
    1.0 - (a_weight - 2.0 * a_weight * c_weight + c_weight)
}

fn agreement(probs: &ProbabilityMap) -> f64 {
    probs.get("00") + probs.get("11")
}

pub fn zero_sum_play(a: &Strategy, b: &Strategy) -> Result<ZeroSumOutcome> {
    let (xa, ya) = move_amplitudes(a);
    let (xb, yb) = move_amplitudes(b);
    let input = player_input(xa, ya)?.kron(&player_input(xb, yb)?)?;
    let final_state = circuit().apply(&input)?;

    let p_a = agreement(&outcome_probabilities(&final_state, &[1, 2])?);
    let p_b = 1.0 - agreement(&outcome_probabilities(&final_state, &[3, 4])?);
    let (a_weight, c_weight) = (xa.norm_sqr(), xb.norm_sqr());
    let p_a_formula = win_probability_formula(a_weight, c_weight);

    if (p_a - p_a_formula).abs() > CONSISTENCY_TOL || (p_a + p_b - 1.0).abs() > CONSISTENCY_TOL {
        return Err(Error::Consistency(format!(
            "zero-sum win probabilities disagree: simulated {p_a}, formula {p_a_formula}, B {p_b}"
        )));
    }
    Ok(ZeroSumOutcome {
        p_a,
        p_b,
        p_a_formula,
        a_weight,
        c_weight,
        final_state,
    })
}

/// Classical mixed version, A playing I with probability `p` and B with `q`: `p − 2pq + q`.
pub fn zero_sum_classical(p: f64, q: f64) -> Result<f64> {
    let p = check_range("p", p, 0.0, 1.0)?;
    let q = check_range("q", q, 0.0, 1.0)?;
    Ok(p - 2.0 * p * q + q)
}

/// Intermediate states of the six-qubit game.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSumStages {
    /// After preparing strategies and ancillas.
    pub prepared: StateVector,
    /// After `U_AB` on qubits 3-6.
    pub shared: StateVector,
    /// After copying qubit 3 onto the payoff register.
    pub final_state: StateVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntangledZeroSumOutcome {
    pub result: GameResult,
    pub stages: ZeroSumStages,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StageDeviation {
    pub prepared: f64,
    pub shared: f64,
    pub final_state: f64,
}

impl StageDeviation {
    pub fn max(&self) -> f64 {
        self.prepared.max(self.shared).max(self.final_state)
    }
}

/// Closed-form stage states for amplitudes `(a, b)` and `(c, d)`, qubits 1..6.
pub fn expected_stages(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<ZeroSumStages> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let plus = StateVector::new(vec![h, h])?;
    let prepared = make_state(2)?
        .kron(&StateVector::new(vec![a, b])?)?
        .kron(&plus)?
        .kron(&StateVector::new(vec![c, d])?)?
        .kron(&plus)?;
    let shared = make_state(2)?.kron(&shared_pairs_state(a, b, c, d)?)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 64];
    amps[0b000000] = a * c;
    amps[0b111010] = b * c;
    amps[0b000101] = a * d;
    amps[0b111111] = b * d;
    Ok(ZeroSumStages {
        prepared,
        shared,
        final_state: StateVector::new(amps)?,
    })
}

/// Compares simulated stages against [`expected_stages`].
pub fn stage_deviation(got: &ZeroSumStages, want: &ZeroSumStages) -> StageDeviation {
    StageDeviation {
        prepared: got.prepared.distance(&want.prepared),
        shared: got.shared.distance(&want.shared),
        final_state: got.final_state.distance(&want.final_state),
    }
}

pub fn entangled_zero_sum_play(a: &Strategy, b: &Strategy) -> Result<EntangledZeroSumOutcome> {
    entangled_zero_sum_play_with(a, b, &PayoffCoding::entangled_zero_sum())
}

/// Six-qubit game: payoff register on qubits 1-2, A on 3-4, B on 5-6.
pub fn entangled_zero_sum_play_with(
    a: &Strategy,
    b: &Strategy,
    coding: &PayoffCoding,
) -> Result<EntangledZeroSumOutcome> {
    let h = named_gate(NamedGate::H);
    let prepare = Circuit::new(6)?
        .push(a.unitary(), &[3])
        .push(h.clone(), &[4])
        .push(b.unitary(), &[5])
        .push(h, &[6]);
    let prepared = prepare.apply(&make_state(6)?)?;
    let shared = Circuit::new(6)?
        .push(zero_sum_uab().clone(), &[3, 4, 5, 6])
        .apply(&prepared)?;
    let cnot = named_gate(NamedGate::Cnot);
    let final_state = Circuit::new(6)?
        .push(cnot.clone(), &[3, 1])
        .push(cnot, &[3, 2])
        .apply(&shared)?;

    let stages = ZeroSumStages {
        prepared,
        shared,
        final_state: final_state.clone(),
    };
    let (xa, ya) = move_amplitudes(a);
    let (xb, yb) = move_amplitudes(b);
    let dev = stage_deviation(&stages, &expected_stages(xa, ya, xb, yb)?);
    if dev.max() > CONSISTENCY_TOL {
        return Err(Error::Consistency(format!(
            "entangled zero-sum stages deviate from closed form: {dev:?}"
        )));
    }
    let result = GameResult::decode(final_state, &[1, 2], coding)?;
    Ok(EntangledZeroSumOutcome { result, stages })
}
