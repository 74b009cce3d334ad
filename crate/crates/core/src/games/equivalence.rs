//! When can a mixed classical game reproduce a given pair of average payoffs?
//!
//! Writing the mixed payoff as `DD + α r + β q + γ r q` per player, the
//! question is whether `(r, q) ∈ [0,1]²` exists hitting both targets. The
//! bilinear system is solved directly (closed-form elimination, then a grid
//! search with Levenberg-Marquardt refinement); the textbook ratio inequality
//! is evaluated alongside for comparison only.

use serde::Serialize;

use crate::error::{Error, Result};

use super::ewl::classical_payoff_unchecked;
use super::payoff::{Payoff, PayoffTable};

/// Residual tolerance for an accepted `(r, q)`.
pub const SOLVE_TOL: f64 = 1e-9;

const GRID: usize = 200;

/// `α = $CD − $DD`, `β = $DC − $DD`, `γ = $CC − $CD − $DC + $DD` for one player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Ratio inequality
/// `max((⟨$B⟩ − $DD,B)/(⟨$A⟩ − $DD,A), α_B/α_A) ≤ γ_B/γ_A ≤ β_B/β_A`
/// with its three evaluated ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiteralInequality {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverRoute {
    ClosedForm,
    GridRefinement,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixedSolution {
    /// Probability that A cooperates.
    pub r: f64,
    /// Probability that B cooperates.
    pub q: f64,
    pub route: SolverRoute,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub target: Payoff,
    pub coefficients_a: Coefficients,
    pub coefficients_b: Coefficients,
    /// `None` when a denominator of the ratio chain vanishes.
    pub literal_inequality: Option<LiteralInequality>,
    pub solver_solution: Option<MixedSolution>,
}

impl EquivalenceReport {
    pub fn literal_inequality_holds(&self) -> Option<bool> {
        self.literal_inequality.map(|l| l.holds)
    }
}

fn coefficients(table: &PayoffTable) -> (Coefficients, Coefficients) {
    let [cc, cd, dc, dd] = table.cells();
    let a = Coefficients {
        alpha: cd.a - dd.a,
        beta: dc.a - dd.a,
        gamma: cc.a - cd.a - dc.a + dd.a,
    };
    let b = Coefficients {
        alpha: cd.b - dd.b,
        beta: dc.b - dd.b,
        gamma: cc.b - cd.b - dc.b + dd.b,
    };
    (a, b)
}

fn literal(target: Payoff, dd: Payoff, ca: &Coefficients, cb: &Coefficients) -> Option<LiteralInequality> {
    let denominators = [target.a - dd.a, ca.alpha, ca.gamma, ca.beta];
    if denominators.contains(&0.0) {
        return None;
    }
    let lower = ((target.b - dd.b) / (target.a - dd.a)).max(cb.alpha / ca.alpha);
    let middle = cb.gamma / ca.gamma;
    let upper = cb.beta / ca.beta;
    Some(LiteralInequality {
        lower,
        middle,
        upper,
        holds: lower <= middle && middle <= upper,
    })
}

/// Compares `target` payoffs against every mixed classical game on `table`.
pub fn classical_equivalence(table: &PayoffTable, target: Payoff) -> Result<EquivalenceReport> {
    if !target.a.is_finite() || !target.b.is_finite() {
        return Err(Error::NonFinite("target payoffs"));
    }
    let (ca, cb) = coefficients(table);
    let dd = table.get(1, 1);
    let solver_solution = solve(table, target, &ca, &cb);
    Ok(EquivalenceReport {
        target,
        coefficients_a: ca,
        coefficients_b: cb,
        literal_inequality: literal(target, dd, &ca, &cb),
        solver_solution,
    })
}

fn residual(table: &PayoffTable, target: Payoff, r: f64, q: f64) -> f64 {
    classical_payoff_unchecked(table, r, q).max_abs_diff(&target)
}

fn solve(table: &PayoffTable, target: Payoff, ca: &Coefficients, cb: &Coefficients) -> Option<MixedSolution> {
    let dd = table.get(1, 1);
    let eq_a = (ca.alpha, ca.beta, ca.gamma, target.a - dd.a);
    let eq_b = (cb.alpha, cb.beta, cb.gamma, target.b - dd.b);

    let accept = |r: f64, q: f64| -> Option<(f64, f64, f64)> {
        let (r, q) = (snap_unit(r)?, snap_unit(q)?);
        let res = residual(table, target, r, q);
        (res <= SOLVE_TOL).then_some((r, q, res))
    };

    let mut found: Vec<(f64, f64, f64)> = Vec::new();
    // eliminate q, solve for r
    for r in eliminate(eq_a, eq_b) {
        if let Some(q) = back_substitute(eq_a, eq_b, r) {
            found.extend(accept(r, q));
        }
    }
    // eliminate r, solve for q (swap roles of the two unknowns)
    let swap = |(x, y, z, w): (f64, f64, f64, f64)| (y, x, z, w);
    for q in eliminate(swap(eq_a), swap(eq_b)) {
        if let Some(r) = back_substitute(swap(eq_a), swap(eq_b), q) {
            found.extend(accept(r, q));
        }
    }
    if let Some((r, q, res)) = smallest(found) {
        return Some(MixedSolution {
            r,
            q,
            route: SolverRoute::ClosedForm,
            residual: res,
        });
    }

    let refined = grid_refine(table, target, eq_a, eq_b)
        .into_iter()
        .filter_map(|(r, q)| accept(r, q))
        .collect();
    smallest(refined).map(|(r, q, res)| MixedSolution {
        r,
        q,
        route: SolverRoute::GridRefinement,
        residual: res,
    })
}

fn smallest(mut found: Vec<(f64, f64, f64)>) -> Option<(f64, f64, f64)> {
    found.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    found.into_iter().next()
}

/// Clamps values within rounding distance of `[0, 1]`; rejects the rest.
fn snap_unit(x: f64) -> Option<f64> {
    const SLACK: f64 = 1e-12;
    if !x.is_finite() || !(-SLACK..=1.0 + SLACK).contains(&x) {
        None
    } else {
        Some(x.clamp(0.0, 1.0))
    }
}

/// Each equation is `α x + β y + γ x y = a`. Eliminating `y` through the first
/// equation gives a quadratic in `x`; returns its real roots.
fn eliminate(e1: (f64, f64, f64, f64), e2: (f64, f64, f64, f64)) -> Vec<f64> {
    let (a1, b1, g1, t1) = e1;
    let (a2, b2, g2, t2) = e2;
    let c2 = a2 * g1 - g2 * a1;
    let c1 = a2 * b1 + g2 * t1 - b2 * a1 - t2 * g1;
    let c0 = b2 * t1 - t2 * b1;
    solve_quadratic(c2, c1, c0)
}

fn back_substitute(e1: (f64, f64, f64, f64), e2: (f64, f64, f64, f64), x: f64) -> Option<f64> {
    // pick the equation whose y-coefficient is better conditioned
    let (d1, d2) = (e1.1 + e1.2 * x, e2.1 + e2.2 * x);
    let (den, num) = if d1.abs() >= d2.abs() {
        (d1, e1.3 - e1.0 * x)
    } else {
        (d2, e2.3 - e2.0 * x)
    };
    (den.abs() > 1e-14).then(|| num / den)
}

fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    if a.abs() < 1e-14 {
        return if b.abs() < 1e-14 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -1e-14 {
        return Vec::new();
    }
    let sq = disc.max(0.0).sqrt();
    // numerically stable pair
    let t = -0.5 * (b + b.signum() * sq);
    if t == 0.0 {
        return vec![0.0];
    }
    vec![t / a, c / t]
}

/// Coarse grid search followed by damped Newton refinement from the best cells.
fn grid_refine(
    table: &PayoffTable,
    target: Payoff,
    e1: (f64, f64, f64, f64),
    e2: (f64, f64, f64, f64),
) -> Vec<(f64, f64)> {
    const SEEDS: usize = 8;
    let step = 1.0 / (GRID - 1) as f64;
    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            let (r, q) = (i as f64 * step, j as f64 * step);
            cells.push((residual(table, target, r, q), r, q));
        }
    }
    cells.sort_by(|x, y| x.0.total_cmp(&y.0));
    cells
        .iter()
        .take(SEEDS)
        .map(|&(_, r, q)| levenberg_marquardt(e1, e2, r, q))
        .collect()
}

fn levenberg_marquardt(e1: (f64, f64, f64, f64), e2: (f64, f64, f64, f64), mut x: f64, mut y: f64) -> (f64, f64) {
    let f = |e: (f64, f64, f64, f64), x: f64, y: f64| e.0 * x + e.1 * y + e.2 * x * y - e.3;
    let mut lambda = 1e-6;
    for _ in 0..200 {
        let (f1, f2) = (f(e1, x, y), f(e2, x, y));
        let cost = f1 * f1 + f2 * f2;
        if cost.sqrt() < 1e-15 {
            break;
        }
        let (j11, j12) = (e1.0 + e1.2 * y, e1.1 + e1.2 * x);
        let (j21, j22) = (e2.0 + e2.2 * y, e2.1 + e2.2 * x);
        // (JᵀJ + λI) δ = -Jᵀ F
        let (a11, a12, a22) = (
            j11 * j11 + j21 * j21 + lambda,
            j11 * j12 + j21 * j22,
            j12 * j12 + j22 * j22 + lambda,
        );
        let (g1, g2) = (j11 * f1 + j21 * f2, j12 * f1 + j22 * f2);
        let det = a11 * a22 - a12 * a12;
        if det.abs() < 1e-300 {
            break;
        }
        let dx = -(a22 * g1 - a12 * g2) / det;
        let dy = -(a11 * g2 - a12 * g1) / det;
        let (nx, ny) = ((x + dx).clamp(0.0, 1.0), (y + dy).clamp(0.0, 1.0));
        let (n1, n2) = (f(e1, nx, ny), f(e2, nx, ny));
        if n1 * n1 + n2 * n2 < cost {
            x = nx;
            y = ny;
            lambda = (lambda * 0.3).max(1e-15);
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    (x, y)
}
