use super::DynamicCover;
use crate::cover::CoverSolution;
use crate::error::{Error, Result};
use crate::system::{ElementId, SetSystem};

/// A background whose cover never changes. Useful for driving the
/// transformation towards a known target, e.g. reconfiguring one vertex
/// cover into another.
pub struct FixedCover<'a> {
    system: &'a SetSystem,
    cover: CoverSolution,
    alpha: f64,
}

impl<'a> FixedCover<'a> {
    pub fn new(system: &'a SetSystem, cover: CoverSolution, alpha: f64) -> Self {
        FixedCover { system, cover, alpha }
    }

    /// Swaps in a different target cover.
    pub fn replace(&mut self, cover: CoverSolution) {
        self.cover = cover;
    }
}

impl DynamicCover for FixedCover<'_> {
    fn name(&self) -> &'static str {
        "fixed"
    }

    fn insert(&mut self, e: ElementId) -> Result<usize> {
        if !self.system.incidence(e).iter().any(|&s| self.cover.contains(s)) {
            return Err(Error::Infeasible(e));
        }
        Ok(0)
    }

    fn delete(&mut self, _e: ElementId) -> Result<usize> {
        Ok(0)
    }

    fn current_cover(&self) -> &CoverSolution {
        &self.cover
    }

    fn approx_alpha(&self) -> f64 {
        self.alpha
    }

    fn work_counter(&self) -> u64 {
        0
    }
}
