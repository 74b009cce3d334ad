//! Numerical checks of the headline results, shared by `qgame verify-paper`
//! and the Python bindings. Each check reports what it measured next to what
//! was expected.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equilibrium::{nash_profiles, pareto_optimal, StrategyGrid};
use crate::error::Result;
use crate::gates::{entangler, entangler_decomposed, strategy_gate, EntanglerParam, Strategy, StrategyParams};
use crate::games::{
    classical_equivalence, classical_outputs, entangled_pd_play_with, entangled_pd_uniform_mix_with,
    entangled_pd_unitary, entangled_zero_sum_play, ewl_final_state, expected_payoff_classical,
    game_input, zero_sum_play, Payoff, PayoffCoding, PayoffTable, CLASSICAL_PLAYS,
};
use crate::matrix::{check_unitary, complete_unitary, UNITARY_TOL};
use crate::state::{apply_unitary, outcome_probabilities, NORM_TOL};

pub const EXACT_TOL: f64 = 1e-12;
pub const EMBEDDING_TOL: f64 = 1e-9;
pub const RANDOM_PAIRS: usize = 500;
pub const EQUIVALENCE_POINTS: usize = 100;
pub const CHECK_SEED: u64 = 0x5eed_2008;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub measured: String,
    pub expected: String,
    pub passed: bool,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: measured {} / expected {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.expected
        )
    }
}

/// Uniform draw over the full strategy parameter box.
pub fn random_strategy<R: Rng>(rng: &mut R) -> StrategyParams {
    StrategyParams::new(
        rng.random_range(0.0..=PI),
        rng.random_range(-PI..=PI),
        rng.random_range(-PI..=PI),
    )
    .expect("sampled inside the domain")
}

/// Runs every check with the standard entangled prisoner's-dilemma coding.
pub fn run_all() -> Result<Vec<CheckOutcome>> {
    run_all_with(&PayoffCoding::entangled_pd())
}

/// Runs every check, decoding the entangled prisoner's dilemma with `pd_coding`.
pub fn run_all_with(pd_coding: &PayoffCoding) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        entangled_pd_states(pd_coding)?,
        pareto_mix(pd_coding)?,
        forbidden_outcomes(pd_coding)?,
        zero_sum_win(RANDOM_PAIRS)?,
        entangled_zero_sum(RANDOM_PAIRS)?,
        classical_embedding()?,
        entangler_identity(),
        classical_pd_equilibrium(),
        equivalence_solver(EQUIVALENCE_POINTS)?,
        unitarity_and_norms()?,
    ])
}

fn outcome(id: u32, name: &'static str, measured: String, expected: String, passed: bool) -> CheckOutcome {
    CheckOutcome {
        id,
        name,
        measured,
        expected,
        passed,
    }
}

fn entangled_pd_states(coding: &PayoffCoding) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for ((a, b), want) in CLASSICAL_PLAYS.iter().zip(classical_outputs()) {
        let got = entangled_pd_play_with(a, b, coding)?.final_state;
        worst = worst.max(got.distance_up_to_phase(&want));
    }
    Ok(outcome(
        1,
        "entangled PD output states",
        format!("max deviation {worst:.3e}"),
        format!("<= {EXACT_TOL:e}"),
        worst <= EXACT_TOL,
    ))
}

fn pareto_mix(coding: &PayoffCoding) -> Result<CheckOutcome> {
    let mix = entangled_pd_uniform_mix_with(coding)?;
    let p = |pay: Payoff| -> f64 {
        mix.iter().filter(|o| o.payoff == pay).map(|o| o.probability).sum()
    };
    let (pareto, nash) = (p(Payoff::new(3.0, 3.0)), p(Payoff::new(1.0, 1.0)));
    let ok = (pareto - 0.75).abs() <= EXACT_TOL && (nash - 0.25).abs() <= EXACT_TOL;
    Ok(outcome(
        2,
        "uniform mix Pareto/Nash probabilities",
        format!("P(3,3)={pareto:.15} P(1,1)={nash:.15}"),
        "P(3,3)=0.75 P(1,1)=0.25".into(),
        ok,
    ))
}

fn forbidden_outcomes(coding: &PayoffCoding) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for (a, b) in &CLASSICAL_PLAYS {
        let r = entangled_pd_play_with(a, b, coding)?;
        worst = worst
            .max(r.probability_of(Payoff::new(5.0, 0.0)))
            .max(r.probability_of(Payoff::new(0.0, 5.0)));
    }
    Ok(outcome(
        3,
        "forbidden (5,0)/(0,5) outcomes",
        format!("max probability {worst:.3e}"),
        format!("<= {EXACT_TOL:e}"),
        worst <= EXACT_TOL,
    ))
}

fn zero_sum_win(pairs: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let (a, b) = (random_strategy(&mut rng), random_strategy(&mut rng));
        let r = zero_sum_play(&a.into(), &b.into())?;
        worst = worst
            .max((r.p_a - r.p_a_formula).abs())
            .max((r.p_b - (1.0 - r.p_a)).abs());
    }
    Ok(outcome(
        4,
        "zero-sum win probability vs closed form",
        format!("max deviation {worst:.3e} over {pairs} pairs"),
        format!("<= {EXACT_TOL:e}"),
        worst <= EXACT_TOL,
    ))
}

fn entangled_zero_sum(pairs: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED + 1);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let (a, b) = (random_strategy(&mut rng), random_strategy(&mut rng));
        // stage agreement is enforced inside the play
        let r = entangled_zero_sum_play(&a.into(), &b.into())?;
        worst = worst.max(r.result.expected_payoffs.max_abs_diff(&Payoff::new(0.0, 0.0)));
    }
    Ok(outcome(
        5,
        "entangled zero-sum expected payoff",
        format!("max |payoff| {worst:.3e} over {pairs} pairs"),
        format!("(0,0) within {EXACT_TOL:e}"),
        worst <= EXACT_TOL,
    ))
}

fn classical_embedding() -> Result<CheckOutcome> {
    let table = PayoffTable::prisoners_dilemma();
    let mut worst: f64 = 0.0;
    for gi in 0..10 {
        let gamma = EntanglerParam::new(FRAC_PI_2 * gi as f64 / 9.0)?;
        for ia in 0..20 {
            let ta = PI * ia as f64 / 19.0;
            for ib in 0..20 {
                let tb = PI * ib as f64 / 19.0;
                let s = ewl_final_state(gamma, &Strategy::params(ta, 0.0, 0.0)?, &Strategy::params(tb, 0.0, 0.0)?)?;
                let probs = outcome_probabilities(&s, &[1, 2])?;
                let (r, q) = ((ta / 2.0).cos().powi(2), (tb / 2.0).cos().powi(2));
                let want = [r * q, r * (1.0 - q), (1.0 - r) * q, (1.0 - r) * (1.0 - q)];
                for ((_, p), w) in probs.iter().zip(want) {
                    worst = worst.max((p - w).abs());
                }
                let quantum = crate::games::expected_payoff_quantum(&s, &table)?;
                let classical = expected_payoff_classical(&table, r.clamp(0.0, 1.0), q.clamp(0.0, 1.0))?;
                worst = worst.max(quantum.max_abs_diff(&classical));
            }
        }
    }
    Ok(outcome(
        6,
        "classical embedding at phi=psi=0",
        format!("max deviation {worst:.3e} over 10x20x20 grid"),
        format!("<= {EMBEDDING_TOL:e}"),
        worst <= EMBEDDING_TOL,
    ))
}

fn entangler_identity() -> CheckOutcome {
    let worst = (0..50)
        .map(|i| {
            let g = EntanglerParam::new(FRAC_PI_2 * i as f64 / 49.0).expect("in range");
            entangler(g).max_abs_diff(&entangler_decomposed(g))
        })
        .fold(0.0, f64::max);
    outcome(
        7,
        "entangler equals CNOT decomposition",
        format!("max deviation {worst:.3e} over 50 values"),
        format!("<= {EXACT_TOL:e}"),
        worst <= EXACT_TOL,
    )
}

fn classical_pd_equilibrium() -> CheckOutcome {
    let table = PayoffTable::prisoners_dilemma();
    let grid = StrategyGrid::new(vec![0usize, 1]).expect("distinct");
    let ne = nash_profiles(|a: &usize, b: &usize| table.get(*a, *b), &grid, &grid);
    let pareto = pareto_optimal(&table.cells());
    let unique_dd = ne.len() == 1
        && (ne[0].strategy_a, ne[0].strategy_b) == (1, 1)
        && ne[0].payoffs == Payoff::new(1.0, 1.0);
    let measured = format!(
        "nash {:?}, pareto(3,3)={}, pareto(1,1)={}",
        ne.iter().map(|p| (p.strategy_a, p.strategy_b)).collect::<Vec<_>>(),
        pareto[0],
        pareto[3]
    );
    outcome(
        8,
        "classical PD Nash and Pareto",
        measured,
        "nash [(1, 1)], pareto(3,3)=true, pareto(1,1)=false".into(),
        unique_dd && pareto[0] && !pareto[3],
    )
}

fn equivalence_solver(points: usize) -> Result<CheckOutcome> {
    let table = PayoffTable::prisoners_dilemma();
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED + 2);
    let mut worst: f64 = 0.0;
    let mut missing = 0;
    for _ in 0..points {
        let (r, q) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        let target = expected_payoff_classical(&table, r, q)?;
        match classical_equivalence(&table, target)?.solver_solution {
            Some(s) => {
                let got = expected_payoff_classical(&table, s.r, s.q)?;
                worst = worst.max(got.max_abs_diff(&target));
            }
            None => missing += 1,
        }
    }
    Ok(outcome(
        9,
        "mixed-strategy equivalence solver",
        format!("{missing} unsolved, max residual {worst:.3e} over {points} targets"),
        format!("0 unsolved, residual <= {:e}", crate::games::SOLVE_TOL),
        missing == 0 && worst <= crate::games::SOLVE_TOL,
    ))
}

fn unitarity_and_norms() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(CHECK_SEED + 3);
    let mut unitary_ok = check_unitary(entangled_pd_unitary().matrix(), UNITARY_TOL)
        && check_unitary(crate::games::zero_sum_uab().matrix(), UNITARY_TOL);
    let mut norm_dev: f64 = 0.0;
    for _ in 0..200 {
        let (a, b) = (random_strategy(&mut rng), random_strategy(&mut rng));
        let g = EntanglerParam::new(rng.random_range(0.0..=FRAC_PI_2))?;
        unitary_ok &= check_unitary(strategy_gate(a).matrix(), UNITARY_TOL)
            && check_unitary(entangler(g).matrix(), UNITARY_TOL);
        let s = ewl_final_state(g, &a.into(), &b.into())?;
        let input = game_input(&a.into(), &b.into())?;
        let out = apply_unitary(&input, entangled_pd_unitary(), &[1, 2, 3, 4])?;
        norm_dev = norm_dev
            .max((s.norm_sqr() - 1.0).abs())
            .max((out.norm_sqr() - 1.0).abs());
    }
    let pairs: Vec<_> = CLASSICAL_PLAYS
        .iter()
        .zip(classical_outputs())
        .map(|((a, b), w)| Ok((game_input(a, b)?, w)))
        .collect::<Result<_>>()?;
    let deterministic = complete_unitary(&pairs)? == complete_unitary(&pairs)?;
    Ok(outcome(
        10,
        "unitarity, norm preservation, determinism",
        format!("unitary={unitary_ok} norm deviation {norm_dev:.3e} deterministic={deterministic}"),
        format!("unitary=true norm <= {NORM_TOL:e} deterministic=true"),
        unitary_ok && norm_dev <= NORM_TOL && deterministic,
    ))
}
