use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, UnitaryMatrix};
use crate::state::{apply_unitary, StateVector};

/// An ordered gate list on a fixed register. Targets are 1-based.
#[derive(Debug, Clone)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<(UnitaryMatrix, Vec<usize>)>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > crate::MAX_QUBITS {
            return Err(Error::Size(n_qubits));
        }
        Ok(Self {
            n_qubits,
            ops: Vec::new(),
        })
    }

    pub fn push(mut self, gate: UnitaryMatrix, targets: &[usize]) -> Self {
        self.ops.push((gate, targets.to_vec()));
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Dimension {
                expected: 1 << self.n_qubits,
                actual: state.dim(),
            });
        }
        self.ops
            .iter()
            .try_fold(state.clone(), |s, (u, t)| apply_unitary(&s, u, t))
    }

    /// The full `2^n × 2^n` matrix of the circuit, column by column.
    pub fn unitary(&self) -> Result<UnitaryMatrix> {
        let dim = 1usize << self.n_qubits;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for col in 0..dim {
            let out = self.apply(&StateVector::basis(self.n_qubits, col)?)?;
            for (row, amp) in out.amplitudes().iter().enumerate() {
                entries[row * dim + col] = *amp;
            }
        }
        UnitaryMatrix::new(ComplexMatrix::new(dim, entries)?)
    }
}
