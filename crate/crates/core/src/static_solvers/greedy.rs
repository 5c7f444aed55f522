use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use super::{harmonic, ChargeVector};
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::system::{ElementId, SetId, SetSystem};
use crate::universe::UniverseState;
use crate::COST_TOL;

#[derive(Copy, Clone, Debug)]
struct Key {
    ratio: f64,
    set: SetId,
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ratio
            .total_cmp(&other.ratio)
            .then(self.set.cmp(&other.set))
    }
}

/// One greedy selection: the set and the elements it newly covered.
#[derive(Clone, Debug)]
pub(crate) struct GreedyPick {
    pub set: SetId,
    pub newly: Vec<ElementId>,
}

/// Runs greedy over `alive`, returning the picks in selection order and
/// the number of elementary operations performed.
///
/// Keys `cost / uncovered` only grow as elements get covered, so stale heap
/// entries are lower bounds and can be refreshed lazily.
pub(crate) fn greedy_picks(system: &SetSystem, alive: &[ElementId]) -> Result<(Vec<GreedyPick>, u64)> {
    let mut work = 0u64;
    let mut uncovered = vec![false; system.num_elements()];
    let mut count = vec![0u32; system.num_sets()];
    let mut touched = Vec::new();
    for &e in alive {
        uncovered[e.idx()] = true;
        for &s in system.incidence(e) {
            if count[s.idx()] == 0 {
                touched.push(s);
            }
            count[s.idx()] += 1;
            work += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<Key>> = touched
        .iter()
        .map(|&s| {
            Reverse(Key {
                ratio: system.cost(s) / count[s.idx()] as f64,
                set: s,
            })
        })
        .collect();
    let mut remaining = alive.len();
    let mut picks = Vec::new();
    while remaining > 0 {
        let Some(Reverse(top)) = heap.pop() else {
            let e = alive
                .iter()
                .copied()
                .find(|e| uncovered[e.idx()])
                .expect("some element is uncovered");
            return Err(Error::Infeasible(e));
        };
        work += 1;
        let c = count[top.set.idx()];
        if c == 0 {
            continue;
        }
        let ratio = system.cost(top.set) / c as f64;
        if ratio != top.ratio {
            heap.push(Reverse(Key { ratio, set: top.set }));
            continue;
        }
        let mut newly = Vec::with_capacity(c as usize);
        for &e in system.members(top.set) {
            work += 1;
            if uncovered[e.idx()] {
                uncovered[e.idx()] = false;
                newly.push(e);
                for &t in system.incidence(e) {
                    count[t.idx()] -= 1;
                    work += 1;
                }
            }
        }
        remaining -= newly.len();
        picks.push(GreedyPick { set: top.set, newly });
    }
    Ok((picks, work))
}

/// Classic greedy: repeatedly take the set minimising `cost / |new
/// elements|` (ties to the lowest id) and charge each newly covered element
/// `cost / c_j`.
pub fn greedy_cover(system: &SetSystem, universe: &UniverseState) -> Result<(CoverSolution, ChargeVector)> {
    let (picks, _) = greedy_picks(system, universe.alive())?;
    let mut cover = CoverSolution::new();
    let mut charges = ChargeVector::zeros(system.num_elements());
    for pick in picks {
        let q = system.cost(pick.set) / pick.newly.len() as f64;
        for e in pick.newly {
            charges.set(e, q);
        }
        cover.insert(system, pick.set);
    }
    Ok((cover, charges))
}

/// Per-set slack of the harmonic charging bound.
#[derive(Clone, Debug, Serialize)]
pub struct SetSlack {
    pub set: SetId,
    pub charge: f64,
    pub bound: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChargeAudit {
    /// `Σ_e q(e)` over alive elements.
    pub total_charge: f64,
    /// `H_n` for the declared capacity.
    pub h_n: f64,
    /// `H_d` for the largest set size (reported only).
    pub h_d: f64,
    /// Largest `Σ_{e∈S} q(e)/H_n - cost(S)`; non-positive when `q/H_n` is dual feasible.
    pub max_dual_overload: f64,
    /// One entry per set with at least one alive element.
    pub slacks: Vec<SetSlack>,
}

impl ChargeAudit {
    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().map(|s| s.slack).fold(f64::INFINITY, f64::min)
    }
}

/// Checks `Σ_{e∈S alive} q(e) ≤ H_{|S∩U|}·cost(S)` for every set and that
/// `q/H_n` is feasible for the dual LP.
pub fn charge_audit(system: &SetSystem, universe: &UniverseState, charges: &ChargeVector) -> Result<ChargeAudit> {
    let h_n = harmonic(system.capacity());
    let mut slacks = Vec::new();
    let mut max_dual_overload = f64::NEG_INFINITY;
    for s in system.sets() {
        let mut size = 0usize;
        let mut charge = 0.0;
        for &e in system.members(s) {
            if universe.is_alive(e) {
                size += 1;
                charge += charges.get(e);
            }
        }
        if size == 0 {
            continue;
        }
        let cost = system.cost(s);
        let bound = harmonic(size) * cost;
        let slack = bound - charge;
        if slack < -COST_TOL * bound.max(1.0) {
            return Err(Error::Audit(format!(
                "set {s}: charge {charge} exceeds H_{size}·cost = {bound} (slack {slack})"
            )));
        }
        max_dual_overload = max_dual_overload.max(charge / h_n - cost);
        slacks.push(SetSlack { set: s, charge, bound, slack });
    }
    if max_dual_overload > COST_TOL {
        return Err(Error::Audit(format!(
            "scaled charges q/H_n overload some set by {max_dual_overload}"
        )));
    }
    let total_charge = universe.alive().iter().map(|&e| charges.get(e)).sum();
    Ok(ChargeAudit {
        total_charge,
        h_n,
        h_d: harmonic(system.max_set_size()),
        max_dual_overload: if slacks.is_empty() { 0.0 } else { max_dual_overload },
        slacks,
    })
}
