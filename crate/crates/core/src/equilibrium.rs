//! Pure-strategy equilibria over finite strategy grids.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::games::Payoff;

/// Payoff differences within this tolerance count as ties.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Player {
    A,
    B,
}

/// A non-empty list of distinct strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyGrid<S> {
    points: Vec<S>,
}

impl<S: PartialEq> StrategyGrid<S> {
    pub fn new(points: Vec<S>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("strategy grid is empty".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Invalid(format!("grid point {i} is a duplicate")));
            }
        }
        Ok(Self { points })
    }
}

impl<S> StrategyGrid<S> {
    pub fn points(&self) -> &[S] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, index: usize) -> &S {
        &self.points[index]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumProfile {
    pub strategy_a: usize,
    pub strategy_b: usize,
    pub payoffs: Payoff,
    /// Pareto optimal among all outcomes of the grid product.
    pub is_pareto_optimal: bool,
}

fn own(p: Payoff, player: Player) -> f64 {
    match player {
        Player::A => p.a,
        Player::B => p.b,
    }
}

fn argmax_within_tol(values: &[f64]) -> Vec<usize> {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= best - TIE_TOL)
        .map(|(i, _)| i)
        .collect()
}

/// Indices of `grid` maximizing `player`'s payoff against a fixed opponent move.
pub fn best_response<S, F>(payoff: F, player: Player, opponent: &S, grid: &StrategyGrid<S>) -> Vec<usize>
where
    F: Fn(&S, &S) -> Payoff,
{
    let values: Vec<f64> = grid
        .points
        .iter()
        .map(|s| match player {
            Player::A => payoff(s, opponent).a,
            Player::B => payoff(opponent, s).b,
        })
        .collect();
    argmax_within_tol(&values)
}

/// Every profile in `grid_a × grid_b` where each move is a best response to the other.
pub fn nash_profiles<S, F>(payoff: F, grid_a: &StrategyGrid<S>, grid_b: &StrategyGrid<S>) -> Vec<EquilibriumProfile>
where
    F: Fn(&S, &S) -> Payoff,
{
    let table: Vec<Vec<Payoff>> = grid_a
        .points
        .iter()
        .map(|sa| grid_b.points.iter().map(|sb| payoff(sa, sb)).collect())
        .collect();
    let flat: Vec<Payoff> = table.iter().flatten().copied().collect();
    let pareto = pareto_optimal(&flat);

    let mut out = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            let column: Vec<f64> = table.iter().map(|r| own(r[j], Player::A)).collect();
            let row_b: Vec<f64> = row.iter().map(|q| own(*q, Player::B)).collect();
            if argmax_within_tol(&column).contains(&i) && argmax_within_tol(&row_b).contains(&j) {
                out.push(EquilibriumProfile {
                    strategy_a: i,
                    strategy_b: j,
                    payoffs: p,
                    is_pareto_optimal: pareto[i * row.len() + j],
                });
            }
        }
    }
    out
}

/// Marks outcomes not weakly dominated (≥ in both, > in one) by any other outcome.
pub fn pareto_optimal(outcomes: &[Payoff]) -> Vec<bool> {
    outcomes
        .iter()
        .map(|p| {
            !outcomes
                .iter()
                .any(|q| q.a >= p.a && q.b >= p.b && (q.a > p.a || q.b > p.b))
        })
        .collect()
}
