//! Background dynamic set cover algorithms.
//!
//! Every algorithm implements [`DynamicCover`]: it receives the adversary's
//! element updates and keeps a feasible cover of the alive elements after
//! each one. The transformation in [`crate::transform`] only relies on this
//! contract.

mod fixed;
mod lazy_pd;
mod level_greedy;
mod recompute;

pub use fixed::FixedCover;
pub use lazy_pd::LazyPrimalDual;
pub use level_greedy::{AuditReport, AuditViolation, ElementView, LevelGreedy, Rule};
pub use recompute::RecomputeGreedy;

use crate::cover::CoverSolution;
use crate::error::Result;
use crate::system::ElementId;
use crate::universe::{UpdateKind, UpdateStep};

pub trait DynamicCover {
    fn name(&self) -> &'static str;

    /// Inserts `e`; returns the number of sets added to or removed from the
    /// maintained cover.
    fn insert(&mut self, e: ElementId) -> Result<usize>;

    /// Deletes `e`; returns the cover recourse of the update.
    fn delete(&mut self, e: ElementId) -> Result<usize>;

    fn current_cover(&self) -> &CoverSolution;

    /// Approximation factor the algorithm is configured for.
    fn approx_alpha(&self) -> f64;

    /// Elementary operations performed so far.
    fn work_counter(&self) -> u64;

    /// Whether the cover stays near-optimal under naive maintenance for a
    /// number of updates proportional to its cost.
    fn is_robust(&self) -> bool {
        false
    }

    /// A certified lower bound on the current optimum, if the algorithm
    /// maintains one.
    fn lower_bound(&self) -> Option<f64> {
        None
    }

    fn as_level_greedy(&self) -> Option<&LevelGreedy<'_>> {
        None
    }

    fn apply(&mut self, step: UpdateStep) -> Result<usize> {
        match step.kind {
            UpdateKind::Insert => self.insert(step.element),
            UpdateKind::Delete => self.delete(step.element),
        }
    }
}

impl<T: DynamicCover + ?Sized> DynamicCover for Box<T> {
    fn name(&self) -> &'static str {
        (**self).name()
    }

    fn insert(&mut self, e: ElementId) -> Result<usize> {
        (**self).insert(e)
    }

    fn delete(&mut self, e: ElementId) -> Result<usize> {
        (**self).delete(e)
    }

    fn current_cover(&self) -> &CoverSolution {
        (**self).current_cover()
    }

    fn approx_alpha(&self) -> f64 {
        (**self).approx_alpha()
    }

    fn work_counter(&self) -> u64 {
        (**self).work_counter()
    }

    fn is_robust(&self) -> bool {
        (**self).is_robust()
    }

    fn lower_bound(&self) -> Option<f64> {
        (**self).lower_bound()
    }

    fn as_level_greedy(&self) -> Option<&LevelGreedy<'_>> {
        (**self).as_level_greedy()
    }
}
