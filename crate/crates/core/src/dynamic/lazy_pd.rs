use super::DynamicCover;
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::static_solvers::{is_tight, primal_dual_cover, PdMode};
use crate::system::{ElementId, SetSystem};
use crate::universe::{UniverseState, UpdateStep};

/// Primal-dual cover maintained lazily: insertions raise one dual variable,
/// deletions keep the dead dual in the set loads, and the structure is
/// rebuilt from scratch once dead dual mass grows past an `ε/(1+ε)` share.
///
/// Every cover set is tight against the loads, so
/// `cost ≤ f·(alive + dead mass) ≤ (1+ε)·f·(alive mass) ≤ (1+ε)·f·OPT`.
pub struct LazyPrimalDual<'a> {
    system: &'a SetSystem,
    epsilon: f64,
    universe: UniverseState,
    dual: Vec<f64>,
    load: Vec<f64>,
    alive_mass: f64,
    dead_mass: f64,
    cover: CoverSolution,
    work: u64,
    rebuilds: u64,
}

impl<'a> LazyPrimalDual<'a> {
    pub fn new(system: &'a SetSystem, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Parameter(format!(
                "lazy primal-dual needs epsilon in (0, 1), got {epsilon}"
            )));
        }
        Ok(LazyPrimalDual {
            system,
            epsilon,
            universe: UniverseState::new(system.num_elements(), system.capacity()),
            dual: vec![0.0; system.num_elements()],
            load: vec![0.0; system.num_sets()],
            alive_mass: 0.0,
            dead_mass: 0.0,
            cover: CoverSolution::new(),
            work: 0,
            rebuilds: 0,
        })
    }

    pub fn rebuild_count(&self) -> u64 {
        self.rebuilds
    }

    /// Dual value of an alive element.
    pub fn dual(&self, e: ElementId) -> f64 {
        self.dual[e.idx()]
    }

    pub fn dead_mass(&self) -> f64 {
        self.dead_mass
    }

    pub fn alive_mass(&self) -> f64 {
        self.alive_mass
    }

    fn rebuild(&mut self) -> Result<()> {
        self.rebuilds += 1;
        self.universe.purge_dead();
        let (cover, duals) = primal_dual_cover(self.system, &self.universe, PdMode::FirstTight)?;
        self.load.iter_mut().for_each(|l| *l = 0.0);
        self.dual.iter_mut().for_each(|y| *y = 0.0);
        self.alive_mass = 0.0;
        for (e, y) in duals.nonzero() {
            self.dual[e.idx()] = y;
            self.alive_mass += y;
            for &s in self.system.incidence(e) {
                self.load[s.idx()] += y;
            }
        }
        self.work += self.universe.alive().iter().map(|&e| self.system.incidence(e).len() as u64).sum::<u64>();
        self.dead_mass = 0.0;
        self.cover = cover;
        Ok(())
    }
}

impl DynamicCover for LazyPrimalDual<'_> {
    fn name(&self) -> &'static str {
        "lazy-pd"
    }

    fn insert(&mut self, e: ElementId) -> Result<usize> {
        self.universe.apply(UpdateStep::insert(e))?;
        let inc = self.system.incidence(e);
        self.work += inc.len() as u64;
        if inc.iter().any(|&s| self.cover.contains(s)) {
            self.dual[e.idx()] = 0.0;
            return Ok(0);
        }
        let raise = inc
            .iter()
            .map(|&s| self.system.cost(s) - self.load[s.idx()])
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        self.dual[e.idx()] = raise;
        self.alive_mass += raise;
        for &s in inc {
            self.load[s.idx()] += raise;
        }
        let s = inc
            .iter()
            .copied()
            .find(|&s| is_tight(self.system.cost(s) - self.load[s.idx()]))
            .ok_or(Error::Internal(format!("raising y({e}) left no tight set")))?;
        self.cover.insert(self.system, s);
        Ok(1)
    }

    fn delete(&mut self, e: ElementId) -> Result<usize> {
        self.universe.apply(UpdateStep::delete(e))?;
        let y = std::mem::take(&mut self.dual[e.idx()]);
        self.alive_mass -= y;
        self.dead_mass += y;
        self.work += 1;
        let total = self.alive_mass + self.dead_mass;
        if self.dead_mass > self.epsilon / (1.0 + self.epsilon) * total {
            let before = self.cover.clone();
            self.rebuild()?;
            return Ok(before.distance(&self.cover));
        }
        Ok(0)
    }

    fn current_cover(&self) -> &CoverSolution {
        &self.cover
    }

    fn approx_alpha(&self) -> f64 {
        (1.0 + self.epsilon) * self.system.frequency() as f64
    }

    fn work_counter(&self) -> u64 {
        self.work
    }

    fn lower_bound(&self) -> Option<f64> {
        Some(self.alive_mass.max(0.0))
    }
}
