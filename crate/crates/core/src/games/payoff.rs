use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{outcome_probabilities, ProbabilityMap, StateVector};

/// Payoff pair `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Payoff {
    pub a: f64,
    pub b: f64,
}

impl Payoff {
    pub const fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn max_abs_diff(&self, other: &Payoff) -> f64 {
        (self.a - other.a).abs().max((self.b - other.b).abs())
    }
}

impl fmt::Display for Payoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl From<(f64, f64)> for Payoff {
    fn from((a, b): (f64, f64)) -> Self {
        Self { a, b }
    }
}

fn check_finite(p: Payoff) -> Result<Payoff> {
    if p.a.is_finite() && p.b.is_finite() {
        Ok(p)
    } else {
        Err(Error::NonFinite("payoff entry"))
    }
}

/// 2×2 bimatrix; row = A's move, column = B's move, index 0 = C (or S1), 1 = D (or S2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffTable {
    entries: [[Payoff; 2]; 2],
}

impl PayoffTable {
    pub fn new(entries: [[Payoff; 2]; 2]) -> Result<Self> {
        for p in entries.iter().flatten() {
            check_finite(*p)?;
        }
        Ok(Self { entries })
    }

    /// Prisoner's dilemma: (C,C)=(3,3), (C,D)=(0,5), (D,C)=(5,0), (D,D)=(1,1).
    pub fn prisoners_dilemma() -> Self {
        Self {
            entries: [
                [Payoff::new(3.0, 3.0), Payoff::new(0.0, 5.0)],
                [Payoff::new(5.0, 0.0), Payoff::new(1.0, 1.0)],
            ],
        }
    }

    /// Zero-sum example: (S1,S1)=(0,0), (S1,S2)=(-2,2), (S2,S1)=(1,-1), (S2,S2)=(0,0).
    pub fn zero_sum() -> Self {
        Self {
            entries: [
                [Payoff::new(0.0, 0.0), Payoff::new(-2.0, 2.0)],
                [Payoff::new(1.0, -1.0), Payoff::new(0.0, 0.0)],
            ],
        }
    }

    /// Builds a table from labelled cells: either `CC, CD, DC, DD` or
    /// `S1S1, S1S2, S2S1, S2S2`.
    pub fn from_labelled(cells: &BTreeMap<String, [f64; 2]>) -> Result<Self> {
        const PD: [&str; 4] = ["CC", "CD", "DC", "DD"];
        const ZS: [&str; 4] = ["S1S1", "S1S2", "S2S1", "S2S2"];
        let keys = if cells.contains_key("CC") { PD } else { ZS };
        if cells.len() != 4 {
            return Err(Error::Invalid(format!(
                "payoff table needs exactly the keys {keys:?}"
            )));
        }
        let mut entries = [[Payoff::new(0.0, 0.0); 2]; 2];
        for (i, key) in keys.iter().enumerate() {
            let [a, b] = cells
                .get(*key)
                .ok_or_else(|| Error::Invalid(format!("payoff table missing key `{key}`")))?;
            entries[i / 2][i % 2] = Payoff::new(*a, *b);
        }
        Self::new(entries)
    }

    pub fn get(&self, a_move: usize, b_move: usize) -> Payoff {
        self.entries[a_move][b_move]
    }

    /// Cells in basis order CC, CD, DC, DD (`|00⟩, |01⟩, |10⟩, |11⟩`).
    pub fn cells(&self) -> [Payoff; 4] {
        [
            self.entries[0][0],
            self.entries[0][1],
            self.entries[1][0],
            self.entries[1][1],
        ]
    }
}

/// Decoding of a 2-qubit payoff register: bitstring `00, 01, 10, 11` → payoff pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffCoding {
    codes: [Payoff; 4],
}

impl PayoffCoding {
    pub fn new(codes: [Payoff; 4]) -> Result<Self> {
        for p in codes {
            check_finite(p)?;
        }
        Ok(Self { codes })
    }

    /// Entangled prisoner's dilemma: 00→(1,1), 01→(0,5), 10→(5,0), 11→(3,3).
    pub fn entangled_pd() -> Self {
        Self {
            codes: [
                Payoff::new(1.0, 1.0),
                Payoff::new(0.0, 5.0),
                Payoff::new(5.0, 0.0),
                Payoff::new(3.0, 3.0),
            ],
        }
    }

    /// Entangled zero-sum game: 00→(0,0), 01→(-1,1), 10→(2,-2), 11→(0,0).
    pub fn entangled_zero_sum() -> Self {
        Self {
            codes: [
                Payoff::new(0.0, 0.0),
                Payoff::new(-1.0, 1.0),
                Payoff::new(2.0, -2.0),
                Payoff::new(0.0, 0.0),
            ],
        }
    }

    /// Builds a coding from the keys `"00"`, `"01"`, `"10"`, `"11"`.
    pub fn from_labelled(cells: &BTreeMap<String, [f64; 2]>) -> Result<Self> {
        const KEYS: [&str; 4] = ["00", "01", "10", "11"];
        if cells.len() != 4 {
            return Err(Error::Invalid(format!(
                "payoff coding needs exactly the keys {KEYS:?}"
            )));
        }
        let mut codes = [Payoff::new(0.0, 0.0); 4];
        for (i, key) in KEYS.iter().enumerate() {
            let [a, b] = cells
                .get(*key)
                .ok_or_else(|| Error::Invalid(format!("payoff coding missing key `{key}`")))?;
            codes[i] = Payoff::new(*a, *b);
        }
        Self::new(codes)
    }

    pub fn decode(&self, bits: &str) -> Result<Payoff> {
        match bits {
            "00" => Ok(self.codes[0]),
            "01" => Ok(self.codes[1]),
            "10" => Ok(self.codes[2]),
            "11" => Ok(self.codes[3]),
            _ => Err(Error::Invalid(format!("`{bits}` is not a 2-bit payoff code"))),
        }
    }

    pub fn codes(&self) -> [Payoff; 4] {
        self.codes
    }
}

/// Probability of one decoded payoff outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffOutcome {
    pub payoff: Payoff,
    pub probability: f64,
}

/// Groups register probabilities by decoded payoff. Outcomes appear in the
/// order they are first reached by `decode` over the register's bitstrings;
/// zero-probability outcomes are kept.
pub fn payoff_distribution<F>(register: &ProbabilityMap, decode: F) -> Result<Vec<PayoffOutcome>>
where
    F: Fn(&str) -> Result<Payoff>,
{
    let mut out: Vec<PayoffOutcome> = Vec::new();
    for (bits, p) in register.iter() {
        let payoff = decode(bits)?;
        match out.iter_mut().find(|o| o.payoff == payoff) {
            Some(o) => o.probability += p,
            None => out.push(PayoffOutcome {
                payoff,
                probability: p,
            }),
        }
    }
    Ok(out)
}

/// `Σ probability · payoff` per player.
pub fn expected_from_distribution(dist: &[PayoffOutcome]) -> Payoff {
    dist.iter().fold(Payoff::new(0.0, 0.0), |acc, o| {
        Payoff::new(acc.a + o.probability * o.payoff.a, acc.b + o.probability * o.payoff.b)
    })
}

/// Outcome of one play of a game with a decoded payoff register.
#[derive(Debug, Clone, PartialEq)]
pub struct GameResult {
    /// Marginal over the payoff (or strategy) register that gets decoded.
    pub register_distribution: ProbabilityMap,
    pub payoff_distribution: Vec<PayoffOutcome>,
    pub expected_payoffs: Payoff,
    pub final_state: StateVector,
}

impl GameResult {
    /// Measures `register` (two qubits) of `final_state` and decodes it with `coding`.
    pub fn decode(final_state: StateVector, register: &[usize], coding: &PayoffCoding) -> Result<Self> {
        if register.len() != 2 {
            return Err(Error::Invalid("payoff register must have two qubits".into()));
        }
        let register_distribution = outcome_probabilities(&final_state, register)?;
        let payoff_distribution = payoff_distribution(&register_distribution, |b| coding.decode(b))?;
        let expected_payoffs = expected_from_distribution(&payoff_distribution);
        Ok(Self {
            register_distribution,
            payoff_distribution,
            expected_payoffs,
            final_state,
        })
    }

    /// Total probability of outcomes decoding to `payoff` (exact match).
    pub fn probability_of(&self, payoff: Payoff) -> f64 {
        self.payoff_distribution
            .iter()
            .filter(|o| o.payoff == payoff)
            .map(|o| o.probability)
            .sum()
    }
}
