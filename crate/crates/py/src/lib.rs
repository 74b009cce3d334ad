//! Python bindings for the qgame simulator.
//!
//! Strategies are passed either as a gate name (`"I"`, `"X"`, `"H"`, ...) or as a
//! `(theta, phi, psi)` tuple. Matrices and states come back as nested lists of
//! Python `complex`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qgame_core::equilibrium::{nash_profiles as core_nash, pareto_optimal as core_pareto, StrategyGrid};
use qgame_core::games::{self, GameResult, Payoff, PayoffCoding, PayoffOutcome, PayoffTable};
use qgame_core::{
    claims, gates, sampling, Complex64, EntanglerParam, NamedGate, ProbabilityMap, StateVector, Strategy, StrategyParams,
    UnitaryMatrix,
};

/// `(row, col, (payoff_a, payoff_b), pareto_optimal)`.
type NashRow = (usize, usize, (f64, f64), bool);
/// `(id, name, passed, measured, expected)`.
type CheckRow = (u32, String, bool, String, String);

fn err(e: qgame_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strategy(obj: &Bound<'_, PyAny>) -> PyResult<Strategy> {
    if let Ok(name) = obj.extract::<String>() {
        let gate: NamedGate = name.parse().map_err(err)?;
        return Strategy::named(gate).map_err(err);
    }
    let (theta, phi, psi) = obj
        .extract::<(f64, f64, f64)>()
        .map_err(|_| PyValueError::new_err("strategy must be a gate name or a (theta, phi, psi) tuple"))?;
    Ok(Strategy::Params(StrategyParams::new(theta, phi, psi).map_err(err)?))
}

fn table(cells: Option<BTreeMap<String, [f64; 2]>>) -> PyResult<PayoffTable> {
    match cells {
        Some(c) => PayoffTable::from_labelled(&c).map_err(err),
        None => Ok(PayoffTable::prisoners_dilemma()),
    }
}

fn coding(cells: Option<BTreeMap<String, [f64; 2]>>, default: PayoffCoding) -> PyResult<PayoffCoding> {
    match cells {
        Some(c) => PayoffCoding::from_labelled(&c).map_err(err),
        None => Ok(default),
    }
}

fn matrix(u: &UnitaryMatrix) -> Vec<Vec<Complex64>> {
    (0..u.dim()).map(|r| (0..u.dim()).map(|c| u.get(r, c)).collect()).collect()
}

fn pair(p: Payoff) -> (f64, f64) {
    (p.a, p.b)
}

fn distribution(p: &ProbabilityMap) -> BTreeMap<String, f64> {
    p.iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn outcomes(dist: &[PayoffOutcome]) -> Vec<((f64, f64), f64)> {
    dist.iter().map(|o| (pair(o.payoff), o.probability)).collect()
}

fn result_dict<'py>(py: Python<'py>, r: &GameResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("final_state", r.final_state.amplitudes().to_vec())?;
    d.set_item("register_distribution", distribution(&r.register_distribution))?;
    d.set_item("payoff_distribution", outcomes(&r.payoff_distribution))?;
    d.set_item("expected_payoffs", pair(r.expected_payoffs))?;
    Ok(d)
}

/// The 2x2 strategy unitary `U(theta, phi, psi)`.
#[pyfunction]
fn strategy_gate(theta: f64, phi: f64, psi: f64) -> PyResult<Vec<Vec<Complex64>>> {
    let p = StrategyParams::new(theta, phi, psi).map_err(err)?;
    Ok(matrix(&gates::strategy_gate(p)))
}

/// The 4x4 entangler `exp(i gamma X⊗X / 2)`.
#[pyfunction]
fn entangler(gamma: f64) -> PyResult<Vec<Vec<Complex64>>> {
    Ok(matrix(&gates::entangler(EntanglerParam::new(gamma).map_err(err)?)))
}

/// Final two-qubit state of the entangle / play / disentangle game.
#[pyfunction]
fn ewl_final_state(gamma: f64, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Vec<Complex64>> {
    let g = EntanglerParam::new(gamma).map_err(err)?;
    let s = games::ewl_final_state(g, &strategy(a)?, &strategy(b)?).map_err(err)?;
    Ok(s.amplitudes().to_vec())
}

/// Expected payoffs of the quantum prisoner's dilemma.
#[pyfunction]
#[pyo3(signature = (gamma, a, b, table=None))]
fn expected_payoff_quantum(
    gamma: f64,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    table: Option<BTreeMap<String, [f64; 2]>>,
) -> PyResult<(f64, f64)> {
    let g = EntanglerParam::new(gamma).map_err(err)?;
    let s = games::ewl_final_state(g, &strategy(a)?, &strategy(b)?).map_err(err)?;
    Ok(pair(games::expected_payoff_quantum(&s, &self::table(table)?).map_err(err)?))
}

/// Expected payoffs when A cooperates with probability `r` and B with `q`.
#[pyfunction]
#[pyo3(signature = (r, q, table=None))]
fn expected_payoff_classical(r: f64, q: f64, table: Option<BTreeMap<String, [f64; 2]>>) -> PyResult<(f64, f64)> {
    Ok(pair(games::expected_payoff_classical(&self::table(table)?, r, q).map_err(err)?))
}

/// Classical mixed strategy `(r, q)` reproducing a target payoff pair.
#[pyfunction]
#[pyo3(signature = (target_a, target_b, table=None))]
fn classical_equivalence<'py>(
    py: Python<'py>,
    target_a: f64,
    target_b: f64,
    table: Option<BTreeMap<String, [f64; 2]>>,
) -> PyResult<Bound<'py, PyDict>> {
    let rep = games::classical_equivalence(&self::table(table)?, Payoff::new(target_a, target_b)).map_err(err)?;
    let d = PyDict::new(py);
    let coeffs = |c: games::Coefficients| (c.alpha, c.beta, c.gamma);
    d.set_item("target", pair(rep.target))?;
    d.set_item("coefficients_a", coeffs(rep.coefficients_a))?;
    d.set_item("coefficients_b", coeffs(rep.coefficients_b))?;
    d.set_item("literal_inequality_holds", rep.literal_inequality_holds())?;
    match rep.solver_solution {
        Some(s) => {
            let sol = PyDict::new(py);
            sol.set_item("r", s.r)?;
            sol.set_item("q", s.q)?;
            sol.set_item("residual", s.residual)?;
            sol.set_item("route", format!("{:?}", s.route))?;
            d.set_item("solution", sol)?;
        }
        None => d.set_item("solution", py.None())?,
    }
    Ok(d)
}

/// Prisoner's dilemma with the payoff register entangled with the strategies.
#[pyfunction]
#[pyo3(signature = (a, b, coding=None))]
fn entangled_pd_play<'py>(
    py: Python<'py>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    coding: Option<BTreeMap<String, [f64; 2]>>,
) -> PyResult<Bound<'py, PyDict>> {
    let c = self::coding(coding, PayoffCoding::entangled_pd())?;
    let r = games::entangled_pd_play_with(&strategy(a)?, &strategy(b)?, &c).map_err(err)?;
    result_dict(py, &r)
}

/// Payoff distribution when both players pick C or D uniformly at random.
#[pyfunction]
#[pyo3(signature = (coding=None))]
fn entangled_pd_uniform_mix(coding: Option<BTreeMap<String, [f64; 2]>>) -> PyResult<Vec<((f64, f64), f64)>> {
    let c = self::coding(coding, PayoffCoding::entangled_pd())?;
    Ok(outcomes(&games::entangled_pd_uniform_mix_with(&c).map_err(err)?))
}

/// Zero-sum game on two shared entangled pairs.
#[pyfunction]
fn zero_sum_play<'py>(py: Python<'py>, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let r = games::zero_sum_play(&strategy(a)?, &strategy(b)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("p_a", r.p_a)?;
    d.set_item("p_b", r.p_b)?;
    d.set_item("p_a_formula", r.p_a_formula)?;
    d.set_item("a_weight", r.a_weight)?;
    d.set_item("c_weight", r.c_weight)?;
    d.set_item("final_state", r.final_state.amplitudes().to_vec())?;
    Ok(d)
}

/// `p - 2pq + q` for classical mixing probabilities.
#[pyfunction]
fn zero_sum_classical(p: f64, q: f64) -> PyResult<f64> {
    games::zero_sum_classical(p, q).map_err(err)
}

/// Zero-sum game with an entangled payoff register.
#[pyfunction]
#[pyo3(signature = (a, b, coding=None))]
fn entangled_zero_sum_play<'py>(
    py: Python<'py>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    coding: Option<BTreeMap<String, [f64; 2]>>,
) -> PyResult<Bound<'py, PyDict>> {
    let c = self::coding(coding, PayoffCoding::entangled_zero_sum())?;
    let r = games::entangled_zero_sum_play_with(&strategy(a)?, &strategy(b)?, &c).map_err(err)?;
    result_dict(py, &r.result)
}

/// Born-rule marginal of `amplitudes` over the 1-based qubits in `subset`.
#[pyfunction]
fn outcome_probabilities(amplitudes: Vec<Complex64>, subset: Vec<usize>) -> PyResult<BTreeMap<String, f64>> {
    let s = StateVector::new(amplitudes).map_err(err)?;
    Ok(distribution(&qgame_core::outcome_probabilities(&s, &subset).map_err(err)?))
}

/// Pure Nash equilibria of a bimatrix game given as `[[(a, b), ...], ...]`.
///
/// Rows are A's strategies, columns B's. Returns `(row, col, (a, b), pareto_optimal)` tuples.
#[pyfunction]
fn nash_profiles(payoffs: Vec<Vec<(f64, f64)>>) -> PyResult<Vec<NashRow>> {
    let rows = payoffs.len();
    let cols = payoffs.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || payoffs.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("payoffs must be a non-empty rectangular matrix"));
    }
    let grid_a = StrategyGrid::new((0..rows).collect()).map_err(err)?;
    let grid_b = StrategyGrid::new((0..cols).collect()).map_err(err)?;
    let f = |a: &usize, b: &usize| Payoff::from(payoffs[*a][*b]);
    Ok(core_nash(f, &grid_a, &grid_b)
        .into_iter()
        .map(|p| (p.strategy_a, p.strategy_b, pair(p.payoffs), p.is_pareto_optimal))
        .collect())
}

/// Mask of outcomes not weakly dominated by any other outcome.
#[pyfunction]
fn pareto_optimal(outcomes: Vec<(f64, f64)>) -> Vec<bool> {
    let v: Vec<Payoff> = outcomes.into_iter().map(Payoff::from).collect();
    core_pareto(&v)
}

/// Seeded shots from a `{bitstring: probability}` distribution.
#[pyfunction]
fn sample_outcomes(distribution: BTreeMap<String, f64>, shots: usize, seed: u64) -> PyResult<Vec<String>> {
    let entries: Vec<(String, f64)> = distribution.into_iter().collect();
    let p = ProbabilityMap::from_entries(entries).map_err(err)?;
    sampling::sample_outcomes(&p, shots, seed).map_err(err)
}

/// Runs the built-in result checks; returns `(id, name, passed, measured, expected)` tuples.
#[pyfunction]
#[pyo3(signature = (coding=None))]
fn verify(coding: Option<BTreeMap<String, [f64; 2]>>) -> PyResult<Vec<CheckRow>> {
    let c = self::coding(coding, PayoffCoding::entangled_pd())?;
    Ok(claims::run_all_with(&c)
        .map_err(err)?
        .into_iter()
        .map(|o| (o.id, o.name.to_string(), o.passed, o.measured, o.expected))
        .collect())
}

#[pymodule]
fn qgame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(strategy_gate, m)?)?;
    m.add_function(wrap_pyfunction!(entangler, m)?)?;
    m.add_function(wrap_pyfunction!(ewl_final_state, m)?)?;
    m.add_function(wrap_pyfunction!(expected_payoff_quantum, m)?)?;
    m.add_function(wrap_pyfunction!(expected_payoff_classical, m)?)?;
    m.add_function(wrap_pyfunction!(classical_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_pd_play, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_pd_uniform_mix, m)?)?;
    m.add_function(wrap_pyfunction!(zero_sum_play, m)?)?;
    m.add_function(wrap_pyfunction!(zero_sum_classical, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_zero_sum_play, m)?)?;
    m.add_function(wrap_pyfunction!(outcome_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(nash_profiles, m)?)?;
    m.add_function(wrap_pyfunction!(pareto_optimal, m)?)?;
    m.add_function(wrap_pyfunction!(sample_outcomes, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("MAX_QUBITS", qgame_core::MAX_QUBITS)?;
    Ok(())
}
