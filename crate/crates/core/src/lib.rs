//! Dense state-vector simulation of two-player quantum games.
//!
//! The crate covers the entangle/play/disentangle prisoner's dilemma, its
//! classical mixed-strategy counterpart, a prisoner's dilemma whose payoff
//! register is entangled with the strategies, and a zero-sum game on shared
//! entangled pairs (with and without a payoff register), plus pure-strategy
//! Nash/Pareto analysis over finite strategy grids.
//!
//! Qubits are numbered from 1, qubit 1 being the most significant bit of the
//! amplitude index (see [`state`]).

pub mod circuit;
pub mod claims;
pub mod equilibrium;
pub mod error;
pub mod games;
pub mod gates;
pub mod matrix;
pub mod sampling;
pub mod state;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use gates::{EntanglerParam, NamedGate, Strategy, StrategyParams};
pub use matrix::{check_unitary, complete_unitary, tensor_product, ComplexMatrix, UnitaryMatrix};
pub use state::{apply_unitary, inner_product, make_state, outcome_probabilities, ProbabilityMap, StateVector};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 12;
