//! Entangle / play / disentangle prisoner's dilemma and its classical mixed counterpart.

use crate::error::{check_range, Error, Result};
use crate::gates::{entangler, EntanglerParam, Strategy};
use crate::matrix::tensor_product;
use crate::state::{apply_unitary, make_state, outcome_probabilities, StateVector};

use super::payoff::{Payoff, PayoffTable};

/// `J(γ)† · (U_A ⊗ U_B) · J(γ) · |00⟩`. Qubit 1 is A's, qubit 2 is B's.
pub fn ewl_final_state(gamma: EntanglerParam, a: &Strategy, b: &Strategy) -> Result<StateVector> {
    let j = entangler(gamma);
    let moves = tensor_product(&a.unitary(), &b.unitary());
    let s = apply_unitary(&make_state(2)?, &j, &[1, 2])?;
    let s = apply_unitary(&s, &moves, &[1, 2])?;
    let s = apply_unitary(&s, &j.adjoint(), &[1, 2])?;
    StateVector::normalized(s.amplitudes().to_vec())
}

/// Average payoffs `Σ $_xy |⟨xy|Ψ⟩|²` over the basis CC, CD, DC, DD.
pub fn expected_payoff_quantum(state: &StateVector, table: &PayoffTable) -> Result<Payoff> {
    if state.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 4,
            actual: state.dim(),
        });
    }
    let probs = outcome_probabilities(state, &[1, 2])?;
    let mut total = Payoff::new(0.0, 0.0);
    for ((_, p), cell) in probs.iter().zip(table.cells()) {
        total.a += p * cell.a;
        total.b += p * cell.b;
    }
    Ok(total)
}

/// Mixed-strategy payoffs when A cooperates with probability `r` and B with `q`.
pub fn expected_payoff_classical(table: &PayoffTable, r: f64, q: f64) -> Result<Payoff> {
    let r = check_range("r", r, 0.0, 1.0)?;
    let q = check_range("q", q, 0.0, 1.0)?;
    Ok(classical_payoff_unchecked(table, r, q))
}

pub(crate) fn classical_payoff_unchecked(table: &PayoffTable, r: f64, q: f64) -> Payoff {
    let weights = [r * q, r * (1.0 - q), (1.0 - r) * q, (1.0 - r) * (1.0 - q)];
    weights
        .iter()
        .zip(table.cells())
        .fold(Payoff::new(0.0, 0.0), |acc, (w, cell)| {
            Payoff::new(acc.a + w * cell.a, acc.b + w * cell.b)
        })
}
