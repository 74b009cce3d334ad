//! Results checked against independently written matrices and closed forms.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use qgame_core::games::{
    classical_equivalence, entangled_pd_play, entangled_pd_unitary, entangled_zero_sum_play, ewl_final_state,
    expected_payoff_classical, game_input, move_amplitudes, zero_sum_uab, Payoff, PayoffTable,
};
use qgame_core::gates::{entangler, strategy_gate};
use qgame_core::{apply_unitary, check_unitary, Complex64, EntanglerParam, StateVector, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M4 = [[Complex64; 4]; 4];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mul4(a: &M4, b: &M4) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

fn kron2(a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    out
}

fn adjoint4(m: &M4) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

/// `cos(γ/2) I + i sin(γ/2) X⊗X`, written out by hand.
fn j_oracle(gamma: f64) -> M4 {
    let (d, o) = (c((gamma / 2.0).cos(), 0.0), c(0.0, (gamma / 2.0).sin()));
    let z = c(0.0, 0.0);
    [[d, z, z, o], [z, d, o, z], [z, o, d, z], [o, z, z, d]]
}

fn ewl_oracle(gamma: f64, ua: [[Complex64; 2]; 2], ub: [[Complex64; 2]; 2]) -> [Complex64; 4] {
    let j = j_oracle(gamma);
    let m = mul4(&adjoint4(&j), &mul4(&kron2(ua, ub), &j));
    [m[0][0], m[1][0], m[2][0], m[3][0]]
}

const X2: [[Complex64; 2]; 2] = [[c0(), c1()], [c1(), c0()]];
const I2: [[Complex64; 2]; 2] = [[c1(), c0()], [c0(), c1()]];

const fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}
const fn c1() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

#[test]
fn ewl_classical_flips_match_matrix_chain() {
    let g = EntanglerParam::MAXIMAL;
    let cases = [
        (Strategy::DEFECT, X2, Strategy::DEFECT, X2, "11"),
        (Strategy::COOPERATE, I2, Strategy::DEFECT, X2, "01"),
        (Strategy::DEFECT, X2, Strategy::COOPERATE, I2, "10"),
    ];
    for (a, ua, b, ub, bits) in cases {
        let got = ewl_final_state(g, &a, &b).unwrap();
        let want = StateVector::new(ewl_oracle(FRAC_PI_2, ua, ub).to_vec()).unwrap();
        assert!(got.distance(&want) < 1e-12);
        assert!(got.distance(&StateVector::from_bits(bits).unwrap()) < 1e-12);
    }
}

#[test]
fn ewl_random_params_match_matrix_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let gamma = rng.random_range(0.0..=FRAC_PI_2);
        let (pa, pb) = (
            qgame_core::claims::random_strategy(&mut rng),
            qgame_core::claims::random_strategy(&mut rng),
        );
        let as2 = |p| {
            let u = strategy_gate(p);
            [[u.get(0, 0), u.get(0, 1)], [u.get(1, 0), u.get(1, 1)]]
        };
        let want = StateVector::new(ewl_oracle(gamma, as2(pa), as2(pb)).to_vec()).unwrap();
        let got = ewl_final_state(EntanglerParam::new(gamma).unwrap(), &pa.into(), &pb.into()).unwrap();
        assert!(got.distance(&want) < 1e-12);
    }
}

#[test]
fn entangler_closed_form() {
    let j = entangler(EntanglerParam::new(PI / 3.0).unwrap());
    let s = apply_unitary(&StateVector::from_bits("00").unwrap(), &j, &[1, 2]).unwrap();
    // cos(π/6) = √3/2, sin(π/6) = 1/2
    assert!((s.amplitude(0) - c(0.75f64.sqrt(), 0.0)).norm() < 1e-15);
    assert!((s.amplitude(3) - c(0.0, 0.5)).norm() < 1e-15);
}

/// Right-hand sides of the four classical plays, written amplitude by amplitude.
/// Index = payoff bits (2) then strategy bits (2).
fn prescribed(play: usize) -> StateVector {
    let h = 0.5;
    let mut amps = vec![c(0.0, 0.0); 16];
    match play {
        0 | 3 => {
            let sign = if play == 0 { 1.0 } else { -1.0 };
            amps[0b0000] = c(h, 0.0);
            amps[0b0011] = c(0.0, h);
            amps[0b1100] = c(sign * h, 0.0);
            amps[0b1111] = c(0.0, -sign * h);
        }
        1 => amps[0b1101] = c(1.0, 0.0),
        2 => amps[0b1110] = c(1.0, 0.0),
        _ => unreachable!(),
    }
    StateVector::new(amps).unwrap()
}

#[test]
fn payoff_entangler_sends_classical_plays_to_prescribed_states() {
    let w = entangled_pd_unitary();
    assert!(check_unitary(w.matrix(), 1e-10));
    let plays = [
        (Strategy::COOPERATE, Strategy::COOPERATE),
        (Strategy::COOPERATE, Strategy::DEFECT),
        (Strategy::DEFECT, Strategy::COOPERATE),
        (Strategy::DEFECT, Strategy::DEFECT),
    ];
    for (k, (a, b)) in plays.iter().enumerate() {
        let out = apply_unitary(&game_input(a, b).unwrap(), w, &[1, 2, 3, 4]).unwrap();
        assert!(out.distance(&prescribed(k)) < 1e-12, "play {k}");
        let r = entangled_pd_play(a, b).unwrap();
        assert!(r.final_state.distance_up_to_phase(&prescribed(k)) < 1e-12);
    }
}

#[test]
fn uab_matches_shared_pair_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = c(FRAC_1_SQRT_2, 0.0);
    for _ in 0..200 {
        let mut unit2 = || {
            let v: Vec<Complex64> = (0..2)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            (v[0] / n, v[1] / n)
        };
        let ((a, b), (cc, d)) = (unit2(), unit2());
        let input: Vec<Complex64> = (0..16)
            .map(|i| {
                let q1 = if i & 8 == 0 { a } else { b };
                let q3 = if i & 2 == 0 { cc } else { d };
                q1 * h * q3 * h
            })
            .collect();
        let input = StateVector::normalized(input).unwrap();
        let out = apply_unitary(&input, zero_sum_uab(), &[1, 2, 3, 4]).unwrap();
        let mut want = vec![c(0.0, 0.0); 16];
        want[0b0000] = a * cc;
        want[0b1010] = b * cc;
        want[0b0101] = a * d;
        want[0b1111] = b * d;
        assert!(out.distance(&StateVector::new(want).unwrap()) < 1e-12);
    }
}

#[test]
fn entangled_zero_sum_final_state_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let (pa, pb) = (
            qgame_core::claims::random_strategy(&mut rng),
            qgame_core::claims::random_strategy(&mut rng),
        );
        let (a, b) = move_amplitudes(&pa.into());
        let (cc, d) = move_amplitudes(&pb.into());
        let r = entangled_zero_sum_play(&pa.into(), &pb.into()).unwrap();
        let mut want = vec![c(0.0, 0.0); 64];
        want[0b000000] = a * cc;
        want[0b111010] = b * cc;
        want[0b000101] = a * d;
        want[0b111111] = b * d;
        assert!(r.result.final_state.distance(&StateVector::new(want).unwrap()) < 1e-12);
    }
}

#[test]
fn equivalence_inverts_mixed_payoffs() {
    let table = PayoffTable::prisoners_dilemma();
    for (r, q) in [(0.5, 0.5), (1.0, 1.0), (0.0, 0.0), (0.2, 0.9), (0.0, 1.0)] {
        let target = expected_payoff_classical(&table, r, q).unwrap();
        let s = classical_equivalence(&table, target).unwrap().solver_solution.unwrap();
        let got = expected_payoff_classical(&table, s.r, s.q).unwrap();
        assert!(got.max_abs_diff(&target) <= 1e-9, "({r}, {q}) -> {s:?}");
    }
    let s = classical_equivalence(&table, Payoff::new(2.25, 2.25)).unwrap().solver_solution.unwrap();
    assert!((s.r - 0.5).abs() < 1e-9 && (s.q - 0.5).abs() < 1e-9);
}
