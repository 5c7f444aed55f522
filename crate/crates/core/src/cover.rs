use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{SetId, SetSystem};
use crate::universe::UniverseState;

/// A set of chosen set-ids with a cached total cost.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CoverSolution {
    members: BTreeSet<SetId>,
    total_cost: f64,
}

impl PartialEq for CoverSolution {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for CoverSolution {}

impl CoverSolution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_sets(system: &SetSystem, sets: impl IntoIterator<Item = SetId>) -> Result<Self> {
        let mut sol = Self::new();
        for s in sets {
            system.try_cost(s)?;
            sol.insert(system, s);
        }
        Ok(sol)
    }

    /// Adds `s`; returns whether it was newly inserted.
    pub fn insert(&mut self, system: &SetSystem, s: SetId) -> bool {
        let added = self.members.insert(s);
        if added {
            self.total_cost += system.cost(s);
        }
        added
    }

    pub fn remove(&mut self, system: &SetSystem, s: SetId) -> bool {
        let removed = self.members.remove(&s);
        if removed {
            self.total_cost -= system.cost(s);
            if self.members.is_empty() {
                self.total_cost = 0.0;
            }
        }
        removed
    }

    #[inline]
    pub fn contains(&self, s: SetId) -> bool {
        self.members.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in increasing id order.
    pub fn iter(&self) -> impl Iterator<Item = SetId> + '_ {
        self.members.iter().copied()
    }

    pub fn members(&self) -> &BTreeSet<SetId> {
        &self.members
    }

    /// Cached total cost.
    pub fn cost(&self) -> f64 {
        self.total_cost
    }

    /// Sets in `self` but not in `other`, in id order.
    pub fn difference<'a>(&'a self, other: &'a CoverSolution) -> impl Iterator<Item = SetId> + 'a {
        self.members.difference(&other.members).copied()
    }

    /// Size of the symmetric difference, i.e. the recourse of switching
    /// from one solution to the other.
    pub fn distance(&self, other: &CoverSolution) -> usize {
        self.members.symmetric_difference(&other.members).count()
    }

    pub fn is_subset(&self, other: &CoverSolution) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// True iff every alive element lies in some member of `sol`.
pub fn is_cover(system: &SetSystem, universe: &UniverseState, sol: &CoverSolution) -> bool {
    universe
        .alive()
        .iter()
        .all(|&e| system.incidence(e).iter().any(|&s| sol.contains(s)))
}

/// Recomputes `Σ cost` from scratch and refreshes the cache.
pub fn solution_cost(system: &SetSystem, sol: &mut CoverSolution) -> Result<f64> {
    let mut total = 0.0;
    for s in sol.iter() {
        total += system.try_cost(s).map_err(|_| Error::UnknownSet(s))?;
    }
    sol.total_cost = total;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::ElementId;
    use crate::universe::UpdateStep;

    fn worked_example() -> SetSystem {
        let e = |i| ElementId(i);
        SetSystem::new(
            4,
            1.0,
            4,
            vec![
                (1.0, vec![e(0), e(1)]),
                (1.0, vec![e(2), e(3)]),
                (1.0, vec![e(0), e(1), e(2)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn vacuous_and_uncovered() {
        let sys = SetSystem::new(1, 1.0, 1, vec![(1.0, vec![ElementId(0)])]).unwrap();
        let mut u = UniverseState::new(1, 1);
        assert!(is_cover(&sys, &u, &CoverSolution::new()));
        u.apply(UpdateStep::insert(ElementId(0))).unwrap();
        assert!(!is_cover(&sys, &u, &CoverSolution::new()));
    }

    #[test]
    fn worked_example_membership() {
        let sys = worked_example();
        let u = UniverseState::with_alive(&sys, sys.elements()).unwrap();
        let good = CoverSolution::from_sets(&sys, [SetId(2), SetId(1)]).unwrap();
        let bad = CoverSolution::from_sets(&sys, [SetId(2), SetId(0)]).unwrap();
        assert!(is_cover(&sys, &u, &good));
        assert!(!is_cover(&sys, &u, &bad));
    }

    #[test]
    fn cost_sums() {
        let sys = SetSystem::new(
            2,
            2.0,
            2,
            vec![
                (0.5, vec![ElementId(0)]),
                (1.0, vec![ElementId(1)]),
                (1.0, vec![ElementId(0), ElementId(1)]),
            ],
        )
        .unwrap();
        let mut empty = CoverSolution::new();
        assert_eq!(solution_cost(&sys, &mut empty).unwrap(), 0.0);
        let mut one = CoverSolution::from_sets(&sys, [SetId(0)]).unwrap();
        assert_eq!(solution_cost(&sys, &mut one).unwrap(), 0.5);
        let mut two = CoverSolution::from_sets(&sys, [SetId(1), SetId(2)]).unwrap();
        assert_eq!(solution_cost(&sys, &mut two).unwrap(), 2.0);
        assert!(matches!(
            CoverSolution::from_sets(&sys, [SetId(7)]),
            Err(Error::UnknownSet(SetId(7)))
        ));
    }

    #[test]
    fn distance_counts_symmetric_difference() {
        let sys = worked_example();
        let a = CoverSolution::from_sets(&sys, [SetId(0), SetId(1)]).unwrap();
        let b = CoverSolution::from_sets(&sys, [SetId(1), SetId(2)]).unwrap();
        assert_eq!(a.distance(&b), 2);
        assert_eq!(a.difference(&b).collect::<Vec<_>>(), vec![SetId(0)]);
    }
}
