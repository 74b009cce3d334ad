//! Dense state vectors and measurement marginals.
//!
//! Qubits are numbered `1..=n` left to right as written in a ket, and qubit 1
//! is the most significant bit of the amplitude index: `|b1 b2 … bn⟩` lives at
//! index `Σ b_i · 2^(n-i)`. In a two-qubit register `|01⟩` is index 1 and
//! `|10⟩` is index 2.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;

/// Allowed deviation of `Σ|amp|²` from one.
pub const NORM_TOL: f64 = 1e-12;

/// Amplitudes below this modulus are treated as zero when aligning global phase.
pub const PHASE_ALIGN_EPS: f64 = 1e-9;

/// A normalized pure state on `n_qubits` qubits.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let n_qubits = register_size(amps.len())?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::Norm(norm_sqr));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        register_size(amps.len())?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Norm(0.0));
        }
        amps.iter_mut().for_each(|z| *z /= norm);
        Self::new(amps)
    }

    /// Computational basis state `index` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Dimension {
                expected: dim,
                actual: index,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Basis state from a bitstring such as `"0110"`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let index = usize::from_str_radix(bits, 2)
            .map_err(|_| Error::Invalid(format!("`{bits}` is not a bitstring")))?;
        Self::basis(bits.len(), index)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `self ⊗ other`, with `self` on the leading (more significant) qubits.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        check_size(self.n_qubits + other.n_qubits)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(Self {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        })
    }

    /// Multiplies by a unit scalar so the first non-negligible amplitude is real and positive.
    pub fn phase_aligned(&self) -> Self {
        let Some(lead) = self.amps.iter().find(|z| z.norm() > PHASE_ALIGN_EPS) else {
            return self.clone();
        };
        let phase = lead.conj() / lead.norm();
        Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|z| z * phase).collect(),
        }
    }

    /// Largest componentwise distance to `other` after aligning both global phases.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "state dimension mismatch");
        let (a, b) = (self.phase_aligned(), other.phase_aligned());
        a.amps
            .iter()
            .zip(&b.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Largest componentwise distance to `other`, phases included.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "state dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Bitstring of basis index `index` in this register.
    pub fn bits_of(&self, index: usize) -> String {
        format!("{:0width$b}", index, width = self.n_qubits)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector[")?;
        let mut first = true;
        for (i, z) in self.amps.iter().enumerate() {
            if z.norm() < 1e-15 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "({:+.6}{:+.6}i)|{}⟩", z.re, z.im, self.bits_of(i))?;
        }
        write!(f, "]")
    }
}

fn check_size(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > crate::MAX_QUBITS {
        return Err(Error::Size(n_qubits));
    }
    Ok(())
}

fn register_size(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Invalid(format!(
            "amplitude count {len} is not a power of two >= 2"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_size(n)?;
    Ok(n)
}

/// `|0…0⟩` on `n_qubits` qubits (1 ≤ n ≤ 12).
pub fn make_state(n_qubits: usize) -> Result<StateVector> {
    StateVector::basis(n_qubits, 0)
}

fn check_targets(n_qubits: usize, targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::Target("empty target list".into()));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t == 0 || t > n_qubits {
            return Err(Error::Target(format!(
                "qubit {t} outside 1..={n_qubits}"
            )));
        }
        if targets[..i].contains(&t) {
            return Err(Error::Target(format!("qubit {t} listed twice")));
        }
    }
    Ok(())
}

/// Applies `u` to the listed qubits (identity elsewhere).
///
/// The first target is the most significant bit of `u`'s local basis.
pub fn apply_unitary(
    state: &StateVector,
    u: &UnitaryMatrix,
    targets: &[usize],
) -> Result<StateVector> {
    let n = state.n_qubits;
    check_targets(n, targets)?;
    let k = targets.len();
    if u.dim() != 1 << k {
        return Err(Error::Dimension {
            expected: 1 << k,
            actual: u.dim(),
        });
    }

    // bit masks of target qubits, local MSB first
    let masks: Vec<usize> = targets.iter().map(|&t| 1usize << (n - t)).collect();
    let target_mask: usize = masks.iter().sum();
    let local_dim = 1usize << k;
    let offsets: Vec<usize> = (0..local_dim)
        .map(|local| {
            masks
                .iter()
                .enumerate()
                .filter(|(j, _)| local & (1 << (k - 1 - j)) != 0)
                .map(|(_, m)| m)
                .sum()
        })
        .collect();

    let m = u.matrix();
    let mut out = state.amps.clone();
    let mut gathered = vec![Complex64::new(0.0, 0.0); local_dim];
    for base in (0..state.dim()).filter(|i| i & target_mask == 0) {
        for (slot, off) in gathered.iter_mut().zip(&offsets) {
            *slot = state.amps[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            out[base | off] = (0..local_dim).map(|col| m.get(row, col) * gathered[col]).sum();
        }
    }
    Ok(StateVector {
        n_qubits: n,
        amps: out,
    })
}

/// `Σ conj(a_i) b_i`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.n_qubits != b.n_qubits {
        return Err(Error::Dimension {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// Distribution of measurement outcomes on a subset of qubits.
///
/// Keys are bitstrings over the subset in the listed qubit order; every one of
/// the `2^k` bitstrings is present, including those with probability zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityMap(BTreeMap<String, f64>);

impl ProbabilityMap {
    pub fn from_entries<I: IntoIterator<Item = (String, f64)>>(entries: I) -> Result<Self> {
        let map: BTreeMap<String, f64> = entries.into_iter().collect();
        let width = map.keys().next().map(String::len).unwrap_or(0);
        if map.keys().any(|k| k.len() != width || k.chars().any(|c| c != '0' && c != '1')) {
            return Err(Error::Invalid("keys must be equal-length bitstrings".into()));
        }
        if map.values().any(|p| !p.is_finite() || *p < -NORM_TOL || *p > 1.0 + NORM_TOL) {
            return Err(Error::Invalid("probabilities must lie in [0, 1]".into()));
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::Norm(total));
        }
        Ok(Self(map))
    }

    /// Probability of `bits`; zero for bitstrings not in the map.
    pub fn get(&self, bits: &str) -> f64 {
        self.0.get(bits).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }
}

/// Marginal probabilities of every bitstring on `subset`.
pub fn outcome_probabilities(state: &StateVector, subset: &[usize]) -> Result<ProbabilityMap> {
    let n = state.n_qubits;
    check_targets(n, subset)?;
    let k = subset.len();
    let mut probs = vec![0.0; 1 << k];
    for (index, amp) in state.amps.iter().enumerate() {
        let local = subset
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((index >> (n - q)) & 1));
        probs[local] += amp.norm_sqr();
    }
    let map = probs
        .into_iter()
        .enumerate()
        .map(|(i, p)| (format!("{:0width$b}", i, width = k), p))
        .collect();
    Ok(ProbabilityMap(map))
}
