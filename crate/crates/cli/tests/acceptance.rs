//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::process::{Command, ExitCode};

use qgame_core::equilibrium::{nash_profiles, pareto_optimal, StrategyGrid};
use qgame_core::games::{
    classical_equivalence, entangled_pd_play, entangled_pd_unitary, entangled_pd_uniform_mix, entangled_zero_sum_play,
    ewl_final_state, expected_payoff_quantum, zero_sum_play, zero_sum_uab, Payoff, PayoffTable,
};
use qgame_core::gates::{entangler, entangler_decomposed, named_gate, strategy_gate, NamedGate};
use qgame_core::{
    apply_unitary, check_unitary, complete_unitary, outcome_probabilities, Complex64, EntanglerParam, StateVector,
    Strategy, StrategyParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXACT: f64 = 1e-12;
const LOOSE: f64 = 1e-9;
const SEED: u64 = 20_081_212;

struct Line {
    id: &'static str,
    name: &'static str,
    measured: String,
    expected: String,
    passed: bool,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_params(rng: &mut ChaCha8Rng) -> StrategyParams {
    StrategyParams::new(rng.random_range(0.0..=PI), rng.random_range(-PI..=PI), rng.random_range(-PI..=PI)).unwrap()
}

/// First column of the strategy gate: the player's `(|0⟩, |1⟩)` amplitudes.
fn column(p: StrategyParams) -> (Complex64, Complex64) {
    let u = strategy_gate(p);
    (u.get(0, 0), u.get(1, 0))
}

fn sparse(n: usize, entries: &[(usize, Complex64)]) -> StateVector {
    let mut amps = vec![c(0.0, 0.0); 1 << n];
    for &(i, z) in entries {
        amps[i] += z;
    }
    StateVector::new(amps).unwrap()
}

fn criterion_1() -> Line {
    let h = 0.5;
    let want = [
        sparse(4, &[(0b0000, c(h, 0.0)), (0b0011, c(0.0, h)), (0b1100, c(h, 0.0)), (0b1111, c(0.0, -h))]),
        sparse(4, &[(0b1101, c(1.0, 0.0))]),
        sparse(4, &[(0b1110, c(1.0, 0.0))]),
        sparse(4, &[(0b0000, c(h, 0.0)), (0b0011, c(0.0, h)), (0b1100, c(-h, 0.0)), (0b1111, c(0.0, h))]),
    ];
    let plays = [
        (Strategy::COOPERATE, Strategy::COOPERATE),
        (Strategy::COOPERATE, Strategy::DEFECT),
        (Strategy::DEFECT, Strategy::COOPERATE),
        (Strategy::DEFECT, Strategy::DEFECT),
    ];
    let mut worst: f64 = 0.0;
    for ((a, b), w) in plays.iter().zip(&want) {
        let got = entangled_pd_play(a, b).unwrap().final_state.phase_aligned();
        let w = w.phase_aligned();
        for (x, y) in got.amplitudes().iter().zip(w.amplitudes()) {
            worst = worst.max((x - y).norm());
        }
    }
    Line {
        id: "1",
        name: "entangled PD output states",
        measured: format!("max componentwise deviation {worst:.3e}"),
        expected: format!("<= {EXACT:e}"),
        passed: worst <= EXACT,
    }
}

fn criterion_2() -> Line {
    let mix = entangled_pd_uniform_mix().unwrap();
    let prob = |p: Payoff| mix.iter().filter(|o| o.payoff == p).map(|o| o.probability).sum::<f64>();
    let (pareto, nash) = (prob(Payoff::new(3.0, 3.0)), prob(Payoff::new(1.0, 1.0)));
    let rest: f64 = mix.iter().map(|o| o.probability).sum::<f64>() - pareto - nash;
    Line {
        id: "2",
        name: "Pareto/Nash mixing",
        measured: format!("P(3,3)={pareto:.15} P(1,1)={nash:.15} other={rest:.1e}"),
        expected: "P(3,3)=0.75 P(1,1)=0.25 within 1e-12".into(),
        passed: (pareto - 0.75).abs() <= EXACT && (nash - 0.25).abs() <= EXACT && rest.abs() <= EXACT,
    }
}

fn criterion_3() -> Line {
    let mut worst: f64 = 0.0;
    for a in [Strategy::COOPERATE, Strategy::DEFECT] {
        for b in [Strategy::COOPERATE, Strategy::DEFECT] {
            let state = entangled_pd_play(&a, &b).unwrap().final_state;
            let reg = outcome_probabilities(&state, &[1, 2]).unwrap();
            worst = worst.max(reg.get("01")).max(reg.get("10"));
        }
    }
    Line {
        id: "3",
        name: "forbidden outcomes (5,0) and (0,5)",
        measured: format!("max probability {worst:.3e}"),
        expected: format!("0 within {EXACT:e}"),
        passed: worst <= EXACT,
    }
}

fn criterion_4() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut dev_a, mut dev_b): (f64, f64) = (0.0, 0.0);
    for _ in 0..500 {
        let (pa, pb) = (random_params(&mut rng), random_params(&mut rng));
        let state = zero_sum_play(&pa.into(), &pb.into()).unwrap().final_state;
        let left = outcome_probabilities(&state, &[1, 2]).unwrap();
        let right = outcome_probabilities(&state, &[3, 4]).unwrap();
        let p_a = left.get("00") + left.get("11");
        let p_b = right.get("01") + right.get("10");
        let (a2, c2) = (column(pa).0.norm_sqr(), column(pb).0.norm_sqr());
        let formula = 1.0 - (a2 - 2.0 * a2 * c2 + c2);
        dev_a = dev_a.max((p_a - formula).abs());
        dev_b = dev_b.max((p_b - (1.0 - p_a)).abs());
    }
    Line {
        id: "4",
        name: "zero-sum win probability",
        measured: format!("max |P_A - formula| {dev_a:.3e}, max |P_B - (1 - P_A)| {dev_b:.3e} over 500 pairs"),
        expected: format!("both <= {EXACT:e}"),
        passed: dev_a <= EXACT && dev_b <= EXACT,
    }
}

fn criterion_5() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut pay, mut stage): (f64, f64) = (0.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    for _ in 0..500 {
        let (pa, pb) = (random_params(&mut rng), random_params(&mut rng));
        let r = entangled_zero_sum_play(&pa.into(), &pb.into()).unwrap();
        pay = pay.max(r.result.expected_payoffs.max_abs_diff(&Payoff::new(0.0, 0.0)));

        let ((a, b), (cc, d)) = (column(pa), column(pb));
        // qubits 1-2 idle, 3 = A's move, 4 = |+⟩, 5 = B's move, 6 = |+⟩
        let prepared: Vec<(usize, Complex64)> = (0..16)
            .map(|i: usize| {
                let x = if i & 8 == 0 { a } else { b };
                let y = if i & 2 == 0 { cc } else { d };
                (i, x * h * y * h)
            })
            .collect();
        let shared = [(0b0000, a * cc), (0b1010, b * cc), (0b0101, a * d), (0b1111, b * d)];
        let last = [(0b000000, a * cc), (0b111010, b * cc), (0b000101, a * d), (0b111111, b * d)];
        stage = stage
            .max(r.stages.prepared.distance(&sparse(6, &prepared)))
            .max(r.stages.shared.distance(&sparse(6, &shared)))
            .max(r.stages.final_state.distance(&sparse(6, &last)));
    }
    Line {
        id: "5",
        name: "entangled zero-sum payoff and intermediate states",
        measured: format!("max |payoff| {pay:.3e}, max stage deviation {stage:.3e} over 500 pairs"),
        expected: format!("both <= {EXACT:e}"),
        passed: pay <= EXACT && stage <= EXACT,
    }
}

fn criterion_6() -> Line {
    let table = PayoffTable::prisoners_dilemma();
    let cell = |i: usize, j: usize| table.get(i, j);
    let (mut prob_dev, mut pay_dev): (f64, f64) = (0.0, 0.0);
    for gi in 0..10 {
        let gamma = FRAC_PI_2 * gi as f64 / 9.0;
        for ta in 0..20 {
            for tb in 0..20 {
                let (theta_a, theta_b) = (PI * ta as f64 / 19.0, PI * tb as f64 / 19.0);
                let a = StrategyParams::classical(theta_a).unwrap();
                let b = StrategyParams::classical(theta_b).unwrap();
                let state = ewl_final_state(EntanglerParam::new(gamma).unwrap(), &a.into(), &b.into()).unwrap();
                let r = (theta_a / 2.0).cos().powi(2);
                let q = (theta_b / 2.0).cos().powi(2);
                let want = [r * q, r * (1.0 - q), (1.0 - r) * q, (1.0 - r) * (1.0 - q)];
                let got = outcome_probabilities(&state, &[1, 2]).unwrap();
                for (bits, w) in ["00", "01", "10", "11"].iter().zip(want) {
                    prob_dev = prob_dev.max((got.get(bits) - w).abs());
                }
                let mixed = |f: fn(&Payoff) -> f64| {
                    r * q * f(&cell(0, 0))
                        + r * (1.0 - q) * f(&cell(0, 1))
                        + (1.0 - r) * q * f(&cell(1, 0))
                        + (1.0 - r) * (1.0 - q) * f(&cell(1, 1))
                };
                let quantum = expected_payoff_quantum(&state, &table).unwrap();
                pay_dev = pay_dev.max(quantum.max_abs_diff(&Payoff::new(mixed(|p| p.a), mixed(|p| p.b))));
            }
        }
    }
    Line {
        id: "6",
        name: "classical embedding at phi = psi = 0",
        measured: format!("max probability deviation {prob_dev:.3e}, max payoff deviation {pay_dev:.3e} over 10x20x20"),
        expected: format!("both <= {LOOSE:e}"),
        passed: prob_dev <= LOOSE && pay_dev <= LOOSE,
    }
}

fn criterion_7() -> Line {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let g = EntanglerParam::new(FRAC_PI_2 * i as f64 / 49.0).unwrap();
        worst = worst.max(entangler(g).max_abs_diff(&entangler_decomposed(g)));
    }
    Line {
        id: "7",
        name: "entangler equals CNOT decomposition",
        measured: format!("max deviation {worst:.3e} over 50 values"),
        expected: format!("<= {EXACT:e}"),
        passed: worst <= EXACT,
    }
}

fn criterion_8() -> Line {
    let table = PayoffTable::prisoners_dilemma();
    let grid = StrategyGrid::new(vec![0usize, 1]).unwrap();
    let profiles = nash_profiles(|a: &usize, b: &usize| table.get(*a, *b), &grid, &grid);
    let found: Vec<(usize, usize, Payoff)> = profiles.iter().map(|p| (p.strategy_a, p.strategy_b, p.payoffs)).collect();
    let label = |i: usize| ["C", "D"][i];
    let shown: Vec<String> = found.iter().map(|(a, b, p)| format!("({}, {}) -> {p}", label(*a), label(*b))).collect();
    let cells = table.cells();
    let mask = pareto_optimal(&cells);
    let at = |p: Payoff| mask[cells.iter().position(|x| *x == p).unwrap()];
    let (p33, p11) = (at(Payoff::new(3.0, 3.0)), at(Payoff::new(1.0, 1.0)));
    let nash_ok = found == vec![(1, 1, Payoff::new(1.0, 1.0))];
    Line {
        id: "8",
        name: "classical PD equilibrium",
        measured: format!("nash {shown:?}, pareto(3,3)={p33}, pareto(1,1)={p11}"),
        expected: "nash [(D, D) -> (1, 1)], pareto(3,3)=true, pareto(1,1)=false".into(),
        passed: nash_ok && p33 && !p11,
    }
}

fn criterion_9() -> Line {
    let table = PayoffTable::prisoners_dilemma();
    let mixed = |r: f64, q: f64| {
        let w = [r * q, r * (1.0 - q), (1.0 - r) * q, (1.0 - r) * (1.0 - q)];
        let cells = table.cells();
        Payoff::new(
            (0..4).map(|k| w[k] * cells[k].a).sum(),
            (0..4).map(|k| w[k] * cells[k].b).sum(),
        )
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut unsolved, mut worst) = (0usize, 0.0f64);
    for _ in 0..100 {
        let target = mixed(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        match classical_equivalence(&table, target).unwrap().solver_solution {
            Some(s) if (0.0..=1.0).contains(&s.r) && (0.0..=1.0).contains(&s.q) => {
                worst = worst.max(mixed(s.r, s.q).max_abs_diff(&target));
            }
            _ => unsolved += 1,
        }
    }
    Line {
        id: "9",
        name: "mixed-strategy equivalence solver",
        measured: format!("{unsolved} unsolved, max residual {worst:.3e} over 100 targets"),
        expected: format!("0 unsolved, residual <= {LOOSE:e}"),
        passed: unsolved == 0 && worst <= LOOSE,
    }
}

fn qgame(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qgame")).args(args).output().expect("qgame runs");
    (out.status.code(), out.stdout)
}

fn criterion_10() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let tol = 1e-10;
    let mut unitary = true;
    for _ in 0..100 {
        unitary &= check_unitary(strategy_gate(random_params(&mut rng)).matrix(), tol);
    }
    for i in 0..50 {
        let g = EntanglerParam::new(FRAC_PI_2 * i as f64 / 49.0).unwrap();
        unitary &= check_unitary(entangler(g).matrix(), tol);
        unitary &= check_unitary(entangler_decomposed(g).matrix(), tol);
    }
    for g in [NamedGate::I, NamedGate::X, NamedGate::Y, NamedGate::Z, NamedGate::H, NamedGate::Cnot, NamedGate::Swap] {
        unitary &= check_unitary(named_gate(g).matrix(), tol);
    }
    unitary &= check_unitary(entangled_pd_unitary().matrix(), tol);
    unitary &= check_unitary(zero_sum_uab().matrix(), tol);

    let mut norm_dev: f64 = 0.0;
    for _ in 0..200 {
        let amps: Vec<Complex64> = (0..16).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let s = StateVector::normalized(amps).unwrap();
        let u = strategy_gate(random_params(&mut rng));
        let t = rng.random_range(1..=4);
        let out = apply_unitary(&s, &u, &[t]).unwrap();
        let out = apply_unitary(&out, entangled_pd_unitary(), &[1, 2, 3, 4]).unwrap();
        norm_dev = norm_dev.max((out.norm_sqr() - 1.0).abs());
    }

    let inputs = [StateVector::from_bits("00").unwrap(), StateVector::from_bits("11").unwrap()];
    let outputs = [
        sparse(2, &[(0, c(FRAC_1_SQRT_2, 0.0)), (3, c(0.0, FRAC_1_SQRT_2))]),
        sparse(2, &[(0, c(0.0, FRAC_1_SQRT_2)), (3, c(FRAC_1_SQRT_2, 0.0))]),
    ];
    let pairs: Vec<_> = inputs.into_iter().zip(outputs).collect();
    let completion_stable = complete_unitary(&pairs).unwrap() == complete_unitary(&pairs).unwrap();

    let commands: [&[&str]; 8] = [
        &["run", "pd-quantum", "--theta-a", "1.2", "--phi-a", "0.4", "--theta-b", "2.2", "--gamma", "1.1"],
        &["run", "pd-entangled", "--theta-a", "0.9", "--psi-b", "-1.3", "--theta-b", "2.0", "--format", "csv"],
        &["run", "zerosum", "--theta-a", "0.7", "--theta-b", "2.5"],
        &["run", "zerosum-entangled", "--a", "H", "--b", "Y"],
        &["run", "equivalence", "--theta-a", "1.0", "--theta-b", "0.5", "--gamma", "0.6"],
        &["sweep", "pd-quantum", "--param", "theta_a", "--lo", "0", "--hi", "3.14159", "--steps", "25"],
        &["sample", "pd-entangled", "--theta-a", "1.3", "--theta-b", "0.8", "--shots", "5000", "--seed", "7"],
        &["verify-paper", "--format", "json"],
    ];
    let mut identical = true;
    for args in commands {
        let (first, second) = (qgame(args), qgame(args));
        identical &= first.0 == Some(0) && first == second;
    }

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("coding.json");
    std::fs::write(&bad, r#"{"00": [3, 3], "01": [0, 5], "10": [5, 0], "11": [1, 1]}"#).unwrap();
    let fault_detected = qgame(&["verify-paper", "--coding", bad.to_str().unwrap()]).0 == Some(1);

    Line {
        id: "10",
        name: "unitarity, norm preservation, determinism",
        measured: format!(
            "unitary={unitary} norm deviation {norm_dev:.3e} completion deterministic={completion_stable} \
             CLI identical={identical} corrupted coding rejected={fault_detected}"
        ),
        expected: format!("unitary=true (1e-10) norm <= {EXACT:e} all deterministic, corrupted coding rejected"),
        passed: unitary && norm_dev <= EXACT && completion_stable && identical && fault_detected,
    }
}

fn main() -> ExitCode {
    let checks: [fn() -> Line; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for check in checks {
        let line = check();
        let tag = if line.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {:>2} {}: measured {} / expected {}",
            line.id, line.name, line.measured, line.expected
        );
        failed += usize::from(!line.passed);
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
