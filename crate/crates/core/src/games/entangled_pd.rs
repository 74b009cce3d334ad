//! Prisoner's dilemma with a two-qubit payoff register entangled to the strategies.
//!
//! Register layout: qubits 1-2 hold the payoff code, qubit 3 is A's strategy
//! and qubit 4 is B's. The strategy pair is prepared as `(U_A⊗U_B)·J(π/2)|00⟩`
//! and a fixed 16×16 unitary `W` then writes the payoff. `W` is defined by
//! where it sends the four classical plays; since those four strategy states
//! span the whole strategy space, `W` is fixed on every reachable input and
//! quantum strategies follow by linearity.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::Result;
use crate::gates::{entangler, EntanglerParam, Strategy};
use crate::matrix::{complete_unitary, tensor_product, UnitaryMatrix};
use crate::state::{apply_unitary, make_state, StateVector};

use super::payoff::{GameResult, PayoffCoding, PayoffOutcome};

pub const PAYOFF_REGISTER: [usize; 2] = [1, 2];

/// The four classical plays in order (I,I), (I,X), (X,I), (X,X).
pub const CLASSICAL_PLAYS: [(Strategy, Strategy); 4] = [
    (Strategy::COOPERATE, Strategy::COOPERATE),
    (Strategy::COOPERATE, Strategy::DEFECT),
    (Strategy::DEFECT, Strategy::COOPERATE),
    (Strategy::DEFECT, Strategy::DEFECT),
];

/// `(U_A⊗U_B)·J(π/2)|00⟩` on two qubits.
pub fn strategy_state(a: &Strategy, b: &Strategy) -> Result<StateVector> {
    let s = apply_unitary(&make_state(2)?, &entangler(EntanglerParam::MAXIMAL), &[1, 2])?;
    apply_unitary(&s, &tensor_product(&a.unitary(), &b.unitary()), &[1, 2])
}

/// `|00⟩_payoff ⊗ (U_A⊗U_B)·J(π/2)|00⟩`.
pub fn game_input(a: &Strategy, b: &Strategy) -> Result<StateVector> {
    make_state(2)?.kron(&strategy_state(a, b)?)
}

/// Prescribed output for each classical play, in [`CLASSICAL_PLAYS`] order.
///
/// With `Φ± = (|00⟩ ± i|11⟩)/√2`:
/// (I,I) → (|00⟩Φ+ + |11⟩Φ−)/√2, (I,X) → |11⟩|01⟩, (X,I) → |11⟩|10⟩,
/// (X,X) → (|00⟩Φ+ − |11⟩Φ−)/√2.
pub fn classical_outputs() -> [StateVector; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let phi = |sign: f64| {
        StateVector::new(vec![Complex64::new(h, 0.0), z, z, Complex64::new(0.0, sign * h)])
            .expect("normalized")
    };
    let ket = |bits: &str| StateVector::from_bits(bits).expect("valid bitstring");
    let superpose = |sign: f64| {
        let first = ket("00").kron(&phi(1.0)).expect("4 qubits");
        let second = ket("11").kron(&phi(-1.0)).expect("4 qubits");
        let amps = first
            .amplitudes()
            .iter()
            .zip(second.amplitudes())
            .map(|(x, y)| (x + y * sign) * h)
            .collect();
        StateVector::normalized(amps).expect("non-zero")
    };
    [superpose(1.0), ket("1101"), ket("1110"), superpose(-1.0)]
}

/// The game unitary `W`, built once per process.
pub fn entangled_pd_unitary() -> &'static UnitaryMatrix {
    static W: OnceLock<UnitaryMatrix> = OnceLock::new();
    W.get_or_init(|| build_unitary().expect("classical plays give orthonormal pairs"))
}

fn build_unitary() -> Result<UnitaryMatrix> {
    let pairs = CLASSICAL_PLAYS
        .iter()
        .zip(classical_outputs())
        .map(|((a, b), out)| Ok((game_input(a, b)?, out)))
        .collect::<Result<Vec<_>>>()?;
    complete_unitary(&pairs)
}

/// One play with the standard payoff coding.
pub fn entangled_pd_play(a: &Strategy, b: &Strategy) -> Result<GameResult> {
    entangled_pd_play_with(a, b, &PayoffCoding::entangled_pd())
}

pub fn entangled_pd_play_with(a: &Strategy, b: &Strategy, coding: &PayoffCoding) -> Result<GameResult> {
    let input = game_input(a, b)?;
    let out = apply_unitary(&input, entangled_pd_unitary(), &[1, 2, 3, 4])?;
    GameResult::decode(out, &PAYOFF_REGISTER, coding)
}

/// Payoff distribution when both players pick I or X with probability 1/2 each.
pub fn entangled_pd_uniform_mix() -> Result<Vec<PayoffOutcome>> {
    entangled_pd_uniform_mix_with(&PayoffCoding::entangled_pd())
}

pub fn entangled_pd_uniform_mix_with(coding: &PayoffCoding) -> Result<Vec<PayoffOutcome>> {
    let mut mix: Vec<PayoffOutcome> = Vec::new();
    for (a, b) in &CLASSICAL_PLAYS {
        for o in entangled_pd_play_with(a, b, coding)?.payoff_distribution {
            let p = o.probability / CLASSICAL_PLAYS.len() as f64;
            match mix.iter_mut().find(|m| m.payoff == o.payoff) {
                Some(m) => m.probability += p,
                None => mix.push(PayoffOutcome {
                    payoff: o.payoff,
                    probability: p,
                }),
            }
        }
    }
    Ok(mix)
}
