use serde::Serialize;

use super::{exact_cover, harmonic, ChargeVector, DEFAULT_NODE_BUDGET};
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::system::{ElementId, SetSystem};
use crate::universe::{UniverseState, UpdateStep};
use crate::COST_TOL;

/// Outcome of checking a greedy cover against a batch of deletions.
#[derive(Clone, Debug, Serialize)]
pub struct RobustnessReport {
    /// `|D| / cost(X)`.
    pub delta: f64,
    pub cover_cost: f64,
    /// `Σ_{e∉D} q(e)`.
    pub surviving_charge: f64,
    /// `Σ q'(e) / H_n`, a certified lower bound on `OPT'`.
    pub lower_bound: f64,
    /// Exact optimum after deletion, when the oracle was run.
    pub opt_after: Option<f64>,
    /// `H_n / (1 - δ)`.
    pub bound: f64,
    /// `cost(X) / OPT'` (or `/ lower_bound` when no oracle ran).
    pub ratio: f64,
    pub holds: bool,
}

/// Checks `cost(X)/OPT' ≤ H_n/(1-δ)` after deleting `deleted` from the
/// universe `X` was computed on. `OPT'` is computed exactly when the system
/// has at most `oracle_max_sets` sets; otherwise the ratio is taken against
/// the charge-based lower bound, which is itself certified.
pub fn robustness_check(
    system: &SetSystem,
    universe: &UniverseState,
    cover: &CoverSolution,
    charges: &ChargeVector,
    deleted: &[ElementId],
    oracle_max_sets: usize,
) -> Result<RobustnessReport> {
    let cost = cover.cost();
    let d = deleted.len() as f64;
    if d > cost + COST_TOL {
        return Err(Error::Parameter(format!(
            "|D| = {d} exceeds cost(X) = {cost}; the bound needs delta < 1"
        )));
    }
    let delta = if cost > 0.0 { d / cost } else { 0.0 };
    let mut after = universe.clone();
    for &e in deleted {
        if !universe.is_alive(e) {
            return Err(Error::Parameter(format!("deleted element {e} is not alive")));
        }
        after.apply(UpdateStep::delete(e))?;
    }
    let h_n = harmonic(system.capacity());
    let surviving_charge: f64 = after.alive().iter().map(|&e| charges.get(e)).sum();
    let lower_bound = surviving_charge / h_n;
    let bound = if delta < 1.0 { h_n / (1.0 - delta) } else { f64::INFINITY };
    let opt_after = if system.num_sets() <= oracle_max_sets {
        Some(exact_cover(system, &after, DEFAULT_NODE_BUDGET)?.cost())
    } else {
        None
    };
    let denom = opt_after.unwrap_or(lower_bound);
    let ratio = if cost == 0.0 {
        0.0
    } else if denom > 0.0 {
        cost / denom
    } else {
        f64::INFINITY
    };
    let holds = ratio <= bound + COST_TOL;
    Ok(RobustnessReport {
        delta,
        cover_cost: cost,
        surviving_charge,
        lower_bound,
        opt_after,
        bound,
        ratio,
        holds,
    })
}
