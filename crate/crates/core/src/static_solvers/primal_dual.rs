use serde::{Deserialize, Serialize};

use super::DualVector;
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::system::{SetId, SetSystem};
use crate::universe::UniverseState;
use crate::COST_TOL;

/// Which tight sets enter the cover when a dual variable stops rising.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PdMode {
    /// Every set that became tight.
    AllTight,
    /// Only the lowest-id tight set.
    FirstTight,
}

#[inline]
pub(crate) fn is_tight(slack: f64) -> bool {
    slack <= COST_TOL
}

/// Primal-dual: visit uncovered alive elements in id order, raise `y_e`
/// until a containing set is tight, and take tight sets according to `mode`.
pub fn primal_dual_cover(
    system: &SetSystem,
    universe: &UniverseState,
    mode: PdMode,
) -> Result<(CoverSolution, DualVector)> {
    let mut load = vec![0.0; system.num_sets()];
    let mut duals = DualVector::zeros(system.num_elements());
    let mut cover = CoverSolution::new();
    for e in universe.alive_sorted() {
        let inc = system.incidence(e);
        if inc.iter().any(|&s| cover.contains(s)) {
            continue;
        }
        let raise = inc
            .iter()
            .map(|&s| system.cost(s) - load[s.idx()])
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        if !raise.is_finite() {
            return Err(Error::Infeasible(e));
        }
        duals.set(e, raise);
        for &s in inc {
            load[s.idx()] += raise;
        }
        let mut tight = inc
            .iter()
            .copied()
            .filter(|&s| is_tight(system.cost(s) - load[s.idx()]));
        match mode {
            PdMode::AllTight => {
                for s in tight {
                    cover.insert(system, s);
                }
            }
            PdMode::FirstTight => {
                let s: SetId = tight.next().expect("raising makes a set tight");
                cover.insert(system, s);
            }
        }
    }
    Ok((cover, duals))
}

/// Weak duality: `Σ_e y(e) ≤ OPT` for any feasible dual. Refuses
/// infeasible vectors.
pub fn dual_lower_bound(system: &SetSystem, duals: &DualVector) -> Result<f64> {
    if let Some((set, load, over)) = duals.max_overload(system) {
        if over > COST_TOL {
            return Err(Error::InfeasibleDual {
                set,
                load,
                cost: system.cost(set),
            });
        }
    }
    Ok(duals.total())
}
