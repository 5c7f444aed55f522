use super::DynamicCover;
use crate::cover::CoverSolution;
use crate::error::Result;
use crate::static_solvers::{greedy_picks, harmonic};
use crate::system::{ElementId, SetSystem};
use crate::universe::{UniverseState, UpdateStep};

/// Baseline that reruns static greedy on the whole universe after every
/// update.
pub struct RecomputeGreedy<'a> {
    system: &'a SetSystem,
    universe: UniverseState,
    cover: CoverSolution,
    charge_total: f64,
    work: u64,
}

impl<'a> RecomputeGreedy<'a> {
    pub fn new(system: &'a SetSystem) -> Self {
        RecomputeGreedy {
            system,
            universe: UniverseState::new(system.num_elements(), system.capacity()),
            cover: CoverSolution::new(),
            charge_total: 0.0,
            work: 0,
        }
    }

    fn recompute(&mut self) -> Result<usize> {
        let mut alive = self.universe.alive().to_vec();
        alive.sort_unstable();
        let (picks, work) = greedy_picks(self.system, &alive)?;
        self.work += work;
        let mut cover = CoverSolution::new();
        let mut charge = 0.0;
        for p in picks {
            cover.insert(self.system, p.set);
            charge += self.system.cost(p.set);
        }
        let recourse = self.cover.distance(&cover);
        self.cover = cover;
        self.charge_total = charge;
        Ok(recourse)
    }
}

impl DynamicCover for RecomputeGreedy<'_> {
    fn name(&self) -> &'static str {
        "recompute"
    }

    fn insert(&mut self, e: ElementId) -> Result<usize> {
        self.universe.apply(UpdateStep::insert(e))?;
        self.recompute()
    }

    fn delete(&mut self, e: ElementId) -> Result<usize> {
        self.universe.apply(UpdateStep::delete(e))?;
        self.recompute()
    }

    fn current_cover(&self) -> &CoverSolution {
        &self.cover
    }

    fn approx_alpha(&self) -> f64 {
        harmonic(self.system.capacity())
    }

    fn work_counter(&self) -> u64 {
        self.work
    }

    /// Greedy charges sum to the cover cost; scaled by `1/H_n` they are a
    /// feasible dual.
    fn lower_bound(&self) -> Option<f64> {
        Some(self.charge_total / harmonic(self.system.capacity()))
    }
}
