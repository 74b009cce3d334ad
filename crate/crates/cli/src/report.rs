//! Evaluating a configured game and shaping the result for output.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use qgame_core::games::{
    classical_equivalence, entangled_pd_play_with, entangled_zero_sum_play_with, ewl_final_state,
    expected_payoff_quantum, zero_sum_classical, zero_sum_play, EquivalenceReport, Payoff, PayoffCoding,
    PayoffTable, PAYOFF_REGISTER,
};
use qgame_core::state::outcome_probabilities;
use qgame_core::{EntanglerParam, NamedGate, ProbabilityMap, StateVector, Strategy, StrategyParams};

use crate::args::{Game, GameArgs, SweepParam};

pub const BASIS_NOTE: &str =
    "qubit 1 is the most significant bit: |b1 b2 ... bn> has index sum_i b_i 2^(n-i); global phase fixed so the first nonzero amplitude is real-positive";

const ZERO_SUM_NOTE: &str = "classical_p_a uses p_A = p - 2pq + q with p = |a|^2, q = |c|^2; it equals the probability that A's two qubits DISAGREE, i.e. 1 - p_a of the quantum rule";

/// Strategy parameters for one player before validation.
#[derive(Debug, Clone, Default)]
pub struct RawStrategy {
    pub named: Option<String>,
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
}

impl RawStrategy {
    fn resolve(&self) -> Result<Strategy> {
        match &self.named {
            Some(name) => {
                let gate: NamedGate = name.parse()?;
                Ok(Strategy::named(gate)?)
            }
            None => Ok(Strategy::Params(StrategyParams::new(self.theta, self.phi, self.psi)?)),
        }
    }
}

/// Fully parsed game configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub game: Game,
    pub gamma: f64,
    pub a: RawStrategy,
    pub b: RawStrategy,
    pub table: PayoffTable,
    pub coding: Option<PayoffCoding>,
}

fn read_cells(path: &Path) -> Result<BTreeMap<String, [f64; 2]>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_coding(path: &Path) -> Result<PayoffCoding> {
    Ok(PayoffCoding::from_labelled(&read_cells(path)?)?)
}

impl RunConfig {
    pub fn from_args(args: &GameArgs) -> Result<Self> {
        let Some(game) = args.game() else {
            bail!("no game given (pd-quantum, pd-entangled, zerosum, zerosum-entangled, equivalence)");
        };
        let table = match &args.table {
            Some(p) => PayoffTable::from_labelled(&read_cells(p)?)?,
            None if matches!(game, Game::Zerosum | Game::ZerosumEntangled) => PayoffTable::zero_sum(),
            None => PayoffTable::prisoners_dilemma(),
        };
        let coding = args.coding.as_deref().map(load_coding).transpose()?;
        Ok(Self {
            game,
            gamma: args.gamma,
            a: RawStrategy {
                named: args.named_a.clone(),
                theta: args.theta_a.unwrap_or(0.0),
                phi: args.phi_a.unwrap_or(0.0),
                psi: args.psi_a.unwrap_or(0.0),
            },
            b: RawStrategy {
                named: args.named_b.clone(),
                theta: args.theta_b.unwrap_or(0.0),
                phi: args.phi_b.unwrap_or(0.0),
                psi: args.psi_b.unwrap_or(0.0),
            },
            table,
            coding,
        })
    }

    /// Copy with one parameter replaced.
    pub fn with_param(&self, param: SweepParam, value: f64) -> Result<Self> {
        let mut c = self.clone();
        let player = match param {
            SweepParam::ThetaA | SweepParam::PhiA | SweepParam::PsiA => &mut c.a,
            SweepParam::ThetaB | SweepParam::PhiB | SweepParam::PsiB => &mut c.b,
            SweepParam::Gamma => {
                if !matches!(c.game, Game::PdQuantum | Game::Equivalence) {
                    bail!("gamma is not a parameter of {}", c.game.name());
                }
                c.gamma = value;
                return Ok(c);
            }
        };
        if player.named.is_some() {
            bail!("cannot sweep {} of a named strategy", param.name());
        }
        match param {
            SweepParam::ThetaA | SweepParam::ThetaB => player.theta = value,
            SweepParam::PhiA | SweepParam::PhiB => player.phi = value,
            _ => player.psi = value,
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutcomeRow {
    pub payoff: [f64; 2],
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroSumExtras {
    pub p_a: f64,
    pub p_b: f64,
    pub p_a_formula: f64,
    pub classical_p: f64,
    pub classical_q: f64,
    pub classical_p_a: f64,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub game: &'static str,
    pub basis: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub strategy_a: String,
    pub strategy_b: String,
    pub n_qubits: usize,
    pub final_state: Vec<[f64; 2]>,
    pub register: Vec<usize>,
    pub register_distribution: BTreeMap<String, f64>,
    pub payoff_distribution: Vec<OutcomeRow>,
    pub expected_payoffs: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_sum: Option<ZeroSumExtras>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceReport>,
}

/// Below this magnitude a reported value is rounding noise and prints as 0.
const NOISE_FLOOR: f64 = 1e-14;

/// Rounds to 15 significant digits; `-0` and values under the noise floor become `0`.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < NOISE_FLOOR {
        return 0.0;
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn amplitudes(state: &StateVector) -> Vec<[f64; 2]> {
    state
        .phase_aligned()
        .amplitudes()
        .iter()
        .map(|z| [sig15(z.re), sig15(z.im)])
        .collect()
}

fn distribution(p: &ProbabilityMap) -> BTreeMap<String, f64> {
    p.iter().map(|(k, v)| (k.to_string(), sig15(v))).collect()
}

fn rows(dist: &[qgame_core::games::PayoffOutcome]) -> Vec<OutcomeRow> {
    dist.iter()
        .map(|o| OutcomeRow {
            payoff: [o.payoff.a, o.payoff.b],
            probability: sig15(o.probability),
        })
        .collect()
}

fn expected(p: Payoff) -> [f64; 2] {
    [sig15(p.a), sig15(p.b)]
}

/// Plays the configured game once.
pub fn play(cfg: &RunConfig) -> Result<(Report, ProbabilityMap)> {
    let (a, b) = (cfg.a.resolve()?, cfg.b.resolve()?);
    let base = |n_qubits, state: &StateVector, register: Vec<usize>, reg: &ProbabilityMap| Report {
        game: cfg.game.name(),
        basis: BASIS_NOTE,
        gamma: None,
        strategy_a: a.label(),
        strategy_b: b.label(),
        n_qubits,
        final_state: amplitudes(state),
        register,
        register_distribution: distribution(reg),
        payoff_distribution: Vec::new(),
        expected_payoffs: [0.0, 0.0],
        zero_sum: None,
        equivalence: None,
    };

    match cfg.game {
        Game::PdQuantum | Game::Equivalence => {
            let gamma = EntanglerParam::new(cfg.gamma)?;
            let state = ewl_final_state(gamma, &a, &b)?;
            let reg = outcome_probabilities(&state, &[1, 2])?;
            let payoff = expected_payoff_quantum(&state, &cfg.table)?;
            let mut report = base(2, &state, vec![1, 2], &reg);
            report.gamma = Some(cfg.gamma);
            report.payoff_distribution = reg
                .iter()
                .zip(cfg.table.cells())
                .map(|((_, p), cell)| OutcomeRow {
                    payoff: [cell.a, cell.b],
                    probability: sig15(p),
                })
                .collect();
            report.expected_payoffs = expected(payoff);
            if cfg.game == Game::Equivalence {
                report.equivalence = Some(classical_equivalence(&cfg.table, payoff)?);
            }
            Ok((report, reg))
        }
        Game::PdEntangled => {
            let coding = cfg.coding.unwrap_or_else(PayoffCoding::entangled_pd);
            let r = entangled_pd_play_with(&a, &b, &coding)?;
            let mut report = base(4, &r.final_state, PAYOFF_REGISTER.to_vec(), &r.register_distribution);
            report.payoff_distribution = rows(&r.payoff_distribution);
            report.expected_payoffs = expected(r.expected_payoffs);
            Ok((report, r.register_distribution))
        }
        Game::ZerosumEntangled => {
            let coding = cfg.coding.unwrap_or_else(PayoffCoding::entangled_zero_sum);
            let r = entangled_zero_sum_play_with(&a, &b, &coding)?.result;
            let mut report = base(6, &r.final_state, PAYOFF_REGISTER.to_vec(), &r.register_distribution);
            report.payoff_distribution = rows(&r.payoff_distribution);
            report.expected_payoffs = expected(r.expected_payoffs);
            Ok((report, r.register_distribution))
        }
        Game::Zerosum => {
            let r = zero_sum_play(&a, &b)?;
            let reg = outcome_probabilities(&r.final_state, &[1, 2, 3, 4])?;
            let mut report = base(4, &r.final_state, vec![1, 2, 3, 4], &reg);
            // unit stakes: the winner takes 1 from the loser
            report.payoff_distribution = vec![
                OutcomeRow {
                    payoff: [1.0, -1.0],
                    probability: sig15(r.p_a),
                },
                OutcomeRow {
                    payoff: [-1.0, 1.0],
                    probability: sig15(r.p_b),
                },
            ];
            report.expected_payoffs = expected(Payoff::new(r.p_a - r.p_b, r.p_b - r.p_a));
            let (p, q) = (r.a_weight.clamp(0.0, 1.0), r.c_weight.clamp(0.0, 1.0));
            report.zero_sum = Some(ZeroSumExtras {
                p_a: sig15(r.p_a),
                p_b: sig15(r.p_b),
                p_a_formula: sig15(r.p_a_formula),
                classical_p: sig15(p),
                classical_q: sig15(q),
                classical_p_a: sig15(zero_sum_classical(p, q)?),
                note: ZERO_SUM_NOTE,
            });
            Ok((report, reg))
        }
    }
}

/// Long-format CSV: `kind,key,value_a,value_b`.
pub fn report_csv(r: &Report) -> String {
    let mut out = String::from("kind,key,value_a,value_b\n");
    out.push_str(&format!("game,{},,\n", r.game));
    if let Some(g) = r.gamma {
        out.push_str(&format!("gamma,,{g},\n"));
    }
    for (i, [re, im]) in r.final_state.iter().enumerate() {
        out.push_str(&format!("amplitude,{:0width$b},{re},{im}\n", i, width = r.n_qubits));
    }
    for (bits, p) in &r.register_distribution {
        out.push_str(&format!("register,{bits},{p},\n"));
    }
    for row in &r.payoff_distribution {
        out.push_str(&format!(
            "payoff,{}|{},{},\n",
            row.payoff[0], row.payoff[1], row.probability
        ));
    }
    out.push_str(&format!("expected,,{},{}\n", r.expected_payoffs[0], r.expected_payoffs[1]));
    if let Some(z) = &r.zero_sum {
        out.push_str(&format!("zero_sum,p_a,{},\n", z.p_a));
        out.push_str(&format!("zero_sum,p_b,{},\n", z.p_b));
        out.push_str(&format!("zero_sum,classical_p_a,{},\n", z.classical_p_a));
    }
    if let Some(e) = &r.equivalence {
        match e.solver_solution {
            Some(s) => out.push_str(&format!("equivalence,r_q,{},{}\n", sig15(s.r), sig15(s.q))),
            None => out.push_str("equivalence,r_q,,\n"),
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub param: &'static str,
    pub value: f64,
    pub expected_a: f64,
    pub expected_b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_p_a: Option<f64>,
}

/// `steps` evenly spaced points from `lo` to `hi`, endpoints exact.
pub fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        bail!("sweep range must satisfy lo <= hi");
    }
    if steps < 2 {
        bail!("sweep needs at least 2 steps");
    }
    let last = steps - 1;
    Ok((0..steps)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last as f64
            }
        })
        .collect())
}

pub fn sweep(cfg: &RunConfig, param: SweepParam, lo: f64, hi: f64, steps: usize) -> Result<Vec<SweepRow>> {
    grid(lo, hi, steps)?
        .into_iter()
        .map(|value| {
            let (report, _) = play(&cfg.with_param(param, value)?)
                .with_context(|| format!("at {} = {value}", param.name()))?;
            Ok(SweepRow {
                param: param.name(),
                value,
                expected_a: report.expected_payoffs[0],
                expected_b: report.expected_payoffs[1],
                p_a: report.zero_sum.as_ref().map(|z| z.p_a),
                classical_p_a: report.zero_sum.as_ref().map(|z| z.classical_p_a),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let Some(first) = rows.first() else {
        return String::new();
    };
    let zero_sum = first.p_a.is_some();
    let mut out = format!(
        "{},expected_a,expected_b{}\n",
        first.param,
        if zero_sum { ",p_a,classical_p_a" } else { "" }
    );
    for r in rows {
        out.push_str(&format!("{},{},{}", r.value, r.expected_a, r.expected_b));
        if let (Some(p), Some(c)) = (r.p_a, r.classical_p_a) {
            out.push_str(&format!(",{p},{c}"));
        }
        out.push('\n');
    }
    out
}
