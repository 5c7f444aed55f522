//! Static solvers: greedy with dual-fitting charges, primal-dual, an exact
//! oracle, weak-duality lower bounds and the robustness check for greedy.

mod exact;
mod greedy;
mod primal_dual;
mod robustness;

use serde::Serialize;

use crate::system::{ElementId, SetSystem};

pub use exact::{exact_cover, exact_cover_default, DEFAULT_NODE_BUDGET};
pub use greedy::{charge_audit, greedy_cover, ChargeAudit};
pub(crate) use greedy::greedy_picks;
pub(crate) use primal_dual::is_tight;
pub use primal_dual::{dual_lower_bound, primal_dual_cover, PdMode};
pub use robustness::{robustness_check, RobustnessReport};

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// Per-element weights indexed by dense element id; elements that were
/// never charged hold zero.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ElementWeights {
    values: Vec<f64>,
}

impl ElementWeights {
    pub fn zeros(num_elements: usize) -> Self {
        ElementWeights {
            values: vec![0.0; num_elements],
        }
    }

    #[inline]
    pub fn get(&self, e: ElementId) -> f64 {
        self.values[e.idx()]
    }

    #[inline]
    pub fn set(&mut self, e: ElementId, v: f64) {
        self.values[e.idx()] = v;
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Non-zero entries in element order.
    pub fn nonzero(&self) -> impl Iterator<Item = (ElementId, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, &v)| (ElementId::from(i), v))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        ElementWeights {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Largest `Σ_{e∈S} w(e) - cost(S)` over all sets, with the set.
    pub fn max_overload(&self, system: &SetSystem) -> Option<(crate::SetId, f64, f64)> {
        system
            .sets()
            .map(|s| {
                let load: f64 = system.members(s).iter().map(|&e| self.get(e)).sum();
                (s, load, load - system.cost(s))
            })
            .max_by(|a, b| a.2.total_cmp(&b.2))
    }
}

/// Greedy's charges `q(e) = cost(S_j) / c_j`.
pub type ChargeVector = ElementWeights;

/// Dual values `y(e)` of the covering LP.
pub type DualVector = ElementWeights;
