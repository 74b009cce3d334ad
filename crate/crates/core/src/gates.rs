//! Gate constructors: the three-parameter strategy gate, the entangler `J(γ)`
//! and the standard named gates.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::matrix::{tensor_product, UnitaryMatrix};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Parameters `(θ, φ, ψ)` of a player's single-qubit strategy.
///
/// `θ ∈ [0, π]` moves the player from cooperate (`θ = 0`) to defect (`θ = π`);
/// `φ, ψ ∈ [-π, π]` are quantum phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyParams {
    theta: f64,
    phi: f64,
    psi: f64,
}

impl StrategyParams {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        Ok(Self {
            theta: check_range("theta", theta, 0.0, PI)?,
            phi: check_range("phi", phi, -PI, PI)?,
            psi: check_range("psi", psi, -PI, PI)?,
        })
    }

    /// `U(θ, 0, 0)`, the classical mixed-strategy embedding.
    pub fn classical(theta: f64) -> Result<Self> {
        Self::new(theta, 0.0, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// Entanglement strength `γ ∈ [0, π/2]` of `J(γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglerParam(f64);

impl EntanglerParam {
    pub const MAXIMAL: Self = Self(FRAC_PI_2);

    pub fn new(gamma: f64) -> Result<Self> {
        check_range("gamma", gamma, 0.0, FRAC_PI_2).map(Self)
    }

    pub fn gamma(&self) -> f64 {
        self.0
    }
}

/// ```text
/// U(θ,φ,ψ) = [ e^{-iφ} cos(θ/2)     i e^{iψ} sin(θ/2) ]
///            [ i e^{-iψ} sin(θ/2)    e^{iφ} cos(θ/2)  ]
/// ```
///
/// At `φ = ψ = 0` this is `exp(iθX/2)`, which commutes with the entangler, so
/// those strategies reproduce classical mixed play for every `γ`. `θ = π`
/// gives `iX`, the bit flip up to global phase.
pub fn strategy_gate(p: StrategyParams) -> UnitaryMatrix {
    let (s, c) = (p.theta / 2.0).sin_cos();
    let rows = [
        [Complex64::from_polar(c, -p.phi), I * Complex64::from_polar(s, p.psi)],
        [I * Complex64::from_polar(s, -p.psi), Complex64::from_polar(c, p.phi)],
    ];
    UnitaryMatrix::from_rows(&rows).expect("strategy gate is unitary for in-range parameters")
}

/// `J(γ) = exp(iγ/2 · X⊗X) = cos(γ/2) I₄ + i sin(γ/2) X⊗X`.
pub fn entangler(g: EntanglerParam) -> UnitaryMatrix {
    let (s, c) = (g.0 / 2.0).sin_cos();
    let (d, o) = (Complex64::new(c, 0.0), I * s);
    UnitaryMatrix::from_rows(&[
        [d, ZERO, ZERO, o],
        [ZERO, d, o, ZERO],
        [ZERO, o, d, ZERO],
        [o, ZERO, ZERO, d],
    ])
    .expect("entangler is unitary")
}

/// `CNOT · (exp(iγX/2) ⊗ I) · CNOT` with qubit 1 as control; equal to [`entangler`].
pub fn entangler_decomposed(g: EntanglerParam) -> UnitaryMatrix {
    let (s, c) = (g.0 / 2.0).sin_cos();
    let rx = UnitaryMatrix::from_rows(&[
        [Complex64::new(c, 0.0), I * s],
        [I * s, Complex64::new(c, 0.0)],
    ])
    .expect("x rotation is unitary");
    let cnot = named_gate(NamedGate::Cnot);
    let middle = tensor_product(&rx, &named_gate(NamedGate::I));
    &(&cnot * &middle) * &cnot
}

/// Standard fixed gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedGate {
    I,
    X,
    Y,
    Z,
    H,
    Cnot,
    Swap,
}

impl NamedGate {
    pub fn n_qubits(self) -> usize {
        match self {
            NamedGate::Cnot | NamedGate::Swap => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedGate::I => "I",
            NamedGate::X => "X",
            NamedGate::Y => "Y",
            NamedGate::Z => "Z",
            NamedGate::H => "H",
            NamedGate::Cnot => "CNOT",
            NamedGate::Swap => "SWAP",
        }
    }
}

impl fmt::Display for NamedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "ID" => Ok(NamedGate::I),
            "X" => Ok(NamedGate::X),
            "Y" => Ok(NamedGate::Y),
            "Z" => Ok(NamedGate::Z),
            "H" => Ok(NamedGate::H),
            "CNOT" | "CX" => Ok(NamedGate::Cnot),
            "SWAP" => Ok(NamedGate::Swap),
            _ => Err(Error::UnknownGate(s.to_string())),
        }
    }
}

/// Matrix of a named gate. CNOT uses the first (most significant) qubit as control.
pub fn named_gate(gate: NamedGate) -> UnitaryMatrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let m = match gate {
        NamedGate::I => return UnitaryMatrix::identity(2),
        NamedGate::X => UnitaryMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        NamedGate::Y => UnitaryMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        NamedGate::Z => UnitaryMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
        NamedGate::H => UnitaryMatrix::from_rows(&[[h, h], [h, -h]]),
        NamedGate::Cnot => UnitaryMatrix::from_rows(&[
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
            [ZERO, ZERO, ONE, ZERO],
        ]),
        NamedGate::Swap => UnitaryMatrix::from_rows(&[
            [ONE, ZERO, ZERO, ZERO],
            [ZERO, ZERO, ONE, ZERO],
            [ZERO, ONE, ZERO, ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ]),
    };
    m.expect("named gates are unitary")
}

/// Looks up a gate by name (`"I"`, `"X"`, `"CNOT"`, ...).
pub fn named_gate_by_name(name: &str) -> Result<UnitaryMatrix> {
    name.parse().map(named_gate)
}

/// A player's move: either a fixed single-qubit gate or a parameterized strategy gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Strategy {
    Named(NamedGate),
    Params(StrategyParams),
}

impl Strategy {
    /// Cooperate: the identity.
    pub const COOPERATE: Self = Strategy::Named(NamedGate::I);
    /// Defect: the bit flip.
    pub const DEFECT: Self = Strategy::Named(NamedGate::X);

    pub fn named(gate: NamedGate) -> Result<Self> {
        if gate.n_qubits() != 1 {
            return Err(Error::Invalid(format!(
                "{gate} is not a single-qubit strategy"
            )));
        }
        Ok(Strategy::Named(gate))
    }

    pub fn params(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        StrategyParams::new(theta, phi, psi).map(Strategy::Params)
    }

    pub fn unitary(&self) -> UnitaryMatrix {
        match *self {
            Strategy::Named(g) => named_gate(g),
            Strategy::Params(p) => strategy_gate(p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Strategy::Named(g) => g.to_string(),
            Strategy::Params(p) => format!("U({}, {}, {})", p.theta, p.phi, p.psi),
        }
    }
}

impl From<StrategyParams> for Strategy {
    fn from(p: StrategyParams) -> Self {
        Strategy::Params(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::check_unitary;
    use crate::state::{apply_unitary, make_state, StateVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn strategy_gate_identity_and_flip() {
        let u = strategy_gate(StrategyParams::new(0.0, 0.0, 0.0).unwrap());
        assert!(u.max_abs_diff(&UnitaryMatrix::identity(2)) < 1e-15);

        let u = strategy_gate(StrategyParams::new(PI, 0.0, 0.0).unwrap());
        let expected = UnitaryMatrix::from_rows(&[[ZERO, I], [I, ZERO]]).unwrap();
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn strategy_gate_sample_is_unitary() {
        let u = strategy_gate(StrategyParams::new(0.7, 0.3, -1.1).unwrap());
        assert!(check_unitary(u.matrix(), 1e-10));
    }

    #[test]
    fn strategy_params_domain() {
        assert!(StrategyParams::new(-0.1, 0.0, 0.0).is_err());
        assert!(StrategyParams::new(3.2, 0.0, 0.0).is_err());
        assert!(StrategyParams::new(1.0, 3.2, 0.0).is_err());
        assert!(StrategyParams::new(1.0, 0.0, -3.2).is_err());
        assert!(matches!(
            StrategyParams::new(f64::NAN, 0.0, 0.0),
            Err(Error::NonFinite(_))
        ));
        assert!(StrategyParams::new(PI, -PI, PI).is_ok());
    }

    #[test]
    fn entangler_domain() {
        assert!(EntanglerParam::new(-1e-9).is_err());
        assert!(EntanglerParam::new(FRAC_PI_2 + 1e-9).is_err());
        assert!(EntanglerParam::new(FRAC_PI_2).is_ok());
    }

    #[test]
    fn entangler_zero_is_identity() {
        let j = entangler(EntanglerParam::new(0.0).unwrap());
        assert_eq!(j, UnitaryMatrix::identity(4));
        let jd = entangler_decomposed(EntanglerParam::new(0.0).unwrap());
        assert!(jd.max_abs_diff(&UnitaryMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn entangler_pi_over_three() {
        let j = entangler(EntanglerParam::new(PI / 3.0).unwrap());
        let s = apply_unitary(&make_state(2).unwrap(), &j, &[1, 2]).unwrap();
        let expected =
            StateVector::new(vec![c(3f64.sqrt() / 2.0, 0.0), ZERO, ZERO, c(0.0, 0.5)]).unwrap();
        assert!(s.distance(&expected) < 1e-15);
    }

    #[test]
    fn decomposition_matches() {
        for gamma in [FRAC_PI_2, 1.0] {
            let g = EntanglerParam::new(gamma).unwrap();
            assert!(entangler(g).max_abs_diff(&entangler_decomposed(g)) < 1e-12);
        }
    }

    #[test]
    fn named_gates_on_basis_states() {
        let s = apply_unitary(&make_state(1).unwrap(), &named_gate(NamedGate::H), &[1]).unwrap();
        assert!((s.amplitude(0) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(1) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);

        let s = apply_unitary(
            &StateVector::from_bits("01").unwrap(),
            &named_gate(NamedGate::Swap),
            &[1, 2],
        )
        .unwrap();
        assert_eq!(s, StateVector::from_bits("10").unwrap());
    }

    #[test]
    fn gate_lookup() {
        assert_eq!("cnot".parse::<NamedGate>().unwrap(), NamedGate::Cnot);
        assert!(matches!(named_gate_by_name("T"), Err(Error::UnknownGate(_))));
        assert!(Strategy::named(NamedGate::Swap).is_err());
        assert!(Strategy::named(NamedGate::H).is_ok());
    }
}
