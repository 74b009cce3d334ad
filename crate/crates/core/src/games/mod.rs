//! Game engines built on the simulator.

mod entangled_pd;
mod equivalence;
mod ewl;
mod payoff;
mod zero_sum;

pub use entangled_pd::{
    classical_outputs, entangled_pd_play, entangled_pd_play_with, entangled_pd_uniform_mix,
    entangled_pd_uniform_mix_with, entangled_pd_unitary, game_input, strategy_state, CLASSICAL_PLAYS,
    PAYOFF_REGISTER,
};
pub use equivalence::{
    classical_equivalence, Coefficients, EquivalenceReport, LiteralInequality, MixedSolution, SolverRoute,
    SOLVE_TOL,
};
pub use ewl::{ewl_final_state, expected_payoff_classical, expected_payoff_quantum};
pub use payoff::{
    expected_from_distribution, payoff_distribution, GameResult, Payoff, PayoffCoding, PayoffOutcome,
    PayoffTable,
};
pub use zero_sum::{
    entangled_zero_sum_play, entangled_zero_sum_play_with, expected_stages, move_amplitudes,
    shared_pairs_state, stage_deviation, win_probability_formula, zero_sum_classical, zero_sum_play,
    zero_sum_uab, EntangledZeroSumOutcome, StageDeviation, ZeroSumOutcome, ZeroSumStages,
    CONSISTENCY_TOL,
};
